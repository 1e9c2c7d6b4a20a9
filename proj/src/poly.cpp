#include "connexion/poly.hpp"

#include "connexion/error.hpp"

#include <algorithm>
#include <cassert>

namespace connexion {

Poly::Poly(Rational const& c)
{
    if (c != 0)
        c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs)
    : c_(std::move(coeffs))
{
    for (auto& c : c_)
        c.canonicalize();
    trim();
}

Poly Poly::monomial(Rational const& c, int deg)
{
    Poly p;
    if (c == 0)
        return p;
    p.c_.assign(static_cast<size_t>(deg) + 1, Rational(0));
    p.c_.back() = c;
    return p;
}

Poly Poly::linear(Rational const& a)
{
    return Poly(std::vector<Rational>{ -a, Rational(1) });
}

bool Poly::is_one() const
{
    return c_.size() == 1 && c_[0] == 1;
}

Rational Poly::coeff(int i) const
{
    if (i < 0 || i > degree())
        return 0;
    return c_[static_cast<size_t>(i)];
}

Rational const& Poly::lead() const
{
    static Rational const zero(0);
    return c_.empty() ? zero : c_.back();
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

Poly& Poly::operator+=(Poly const& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(Poly const& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(Poly const& a, Poly const& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    Poly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

Poly& Poly::operator*=(Poly const& o)
{
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(Rational const& s)
{
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_)
        c *= s;
    return *this;
}

std::pair<Poly, Poly> Poly::divmod(Poly const& a, Poly const& b)
{
    if (b.is_zero())
        throw domain_error("polynomial division by zero");
    Poly q, r = a;
    if (a.degree() < b.degree())
        return { q, r };
    q.c_.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, Rational(0));
    Rational const inv_lead = 1 / b.lead();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int const shift = r.degree() - b.degree();
        Rational const k = r.lead() * inv_lead;
        q.c_[static_cast<size_t>(shift)] = k;
        for (int i = 0; i <= b.degree(); ++i)
            r.c_[static_cast<size_t>(i + shift)] -= k * b.c_[static_cast<size_t>(i)];
        r.trim();
    }
    q.trim();
    return { q, r };
}

bool Poly::divides(Poly const& other) const
{
    return (other % *this).is_zero();
}

Rational Poly::eval(Rational const& x) const
{
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1)
        return {};
    std::vector<Rational> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(d));
}

Poly Poly::monic() const
{
    if (is_zero())
        return {};
    return *this * (1 / lead());
}

Poly Poly::pow(unsigned e) const
{
    Poly r(1), b = *this;
    while (e) {
        if (e & 1u)
            r *= b;
        e >>= 1;
        if (e)
            b *= b;
    }
    return r;
}

Poly Poly::taylor_shift(Rational const& a) const
{
    return compose(linear(-a));
}

Poly Poly::compose(Poly const& q) const
{
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * q + Poly(*it);
    return acc;
}

int Poly::order_at(Rational const& a) const
{
    if (is_zero())
        throw domain_error("order of the zero polynomial");
    int k = 0;
    Poly p = *this;
    Poly const lin = linear(a);
    for (;;) {
        auto [q, r] = divmod(p, lin);
        if (!r.is_zero())
            return k;
        p = std::move(q);
        ++k;
    }
}

bool operator<(Poly const& a, Poly const& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        auto const& x = a.c_[static_cast<size_t>(i)];
        auto const& y = b.c_[static_cast<size_t>(i)];
        if (x != y)
            return x < y;
    }
    return false;
}

namespace {

using IntPoly = std::vector<Integer>;

// Integer multiple of p with coprime coefficients.
IntPoly primitive_part(Poly const& p)
{
    Integer den = 1, g = 0;
    for (auto const& c : p.coeffs())
        den = lcm(den, Integer(c.get_den()));
    IntPoly out;
    for (auto const& c : p.coeffs()) {
        out.push_back(Integer(c.get_num()) * (den / c.get_den()));
        g = gcd(g, out.back());
    }
    if (g > 1)
        for (auto& c : out)
            c /= g;
    return out;
}

void make_primitive(IntPoly& p)
{
    Integer g = 0;
    for (auto const& c : p)
        g = gcd(g, c);
    if (g > 1)
        for (auto& c : p)
            c /= g;
}

void trim_int(IntPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

// lc(b)^k a mod b, computed without fractions.
IntPoly pseudo_remainder(IntPoly r, IntPoly const& b)
{
    Integer const lb = b.back();
    size_t const db = b.size() - 1;
    while (!r.empty() && r.size() - 1 >= db) {
        Integer const lr = r.back();
        size_t const shift = r.size() - 1 - db;
        for (auto& c : r)
            c *= lb;
        for (size_t i = 0; i <= db; ++i)
            r[i + shift] -= lr * b[i];
        trim_int(r);
        make_primitive(r);
    }
    return r;
}

} // namespace

// Primitive remainder sequence over Z, so that coefficients stay the size
// of the inputs instead of growing along a rational Euclid chain.
Poly gcd(Poly a, Poly b)
{
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.is_constant() || b.is_constant())
        return Poly(1);
    IntPoly x = primitive_part(a), y = primitive_part(b);
    if (x.size() < y.size())
        std::swap(x, y);
    while (!y.empty()) {
        IntPoly r = pseudo_remainder(x, y);
        x = std::move(y);
        y = std::move(r);
        if (x.size() == 1)
            return Poly(1);
    }
    std::vector<Rational> c;
    for (auto const& v : x)
        c.emplace_back(v);
    return Poly(std::move(c)).monic();
}

Poly lcm(Poly const& a, Poly const& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    return (a * b / gcd(a, b)).monic();
}

ExtendedGcd extended_gcd(Poly const& a, Poly const& b)
{
    Poly r0 = a, r1 = b;
    Poly s0(1), s1, t0, t1(1);
    while (!r1.is_zero()) {
        auto [q, r] = Poly::divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return { {}, {}, {} };
    Rational const k = 1 / r0.lead();
    return { r0 * k, s0 * k, t0 * k };
}

Poly squarefree_part(Poly const& p)
{
    if (p.is_constant())
        return p.is_zero() ? Poly() : Poly(1);
    return (p / gcd(p, p.derivative())).monic();
}

namespace {

// Primitive integer polynomial proportional to p.
std::vector<Integer> integer_primitive(Poly const& p)
{
    Integer den = 1;
    for (auto const& c : p.coeffs()) {
        Integer const d = c.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<Integer> z;
    z.reserve(p.coeffs().size());
    Integer content = 0;
    for (auto const& c : p.coeffs()) {
        Integer v = c.get_num() * (den / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        z.push_back(std::move(v));
    }
    if (content != 0 && content != 1)
        for (auto& v : z)
            v /= content;
    return z;
}

Integer eval_mod(std::vector<Integer> const& f, Integer const& x, Integer const& m)
{
    Integer acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        acc = acc * x + *it;
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
    }
    return acc;
}

std::vector<Integer> derivative(std::vector<Integer> const& f)
{
    std::vector<Integer> d;
    for (size_t i = 1; i < f.size(); ++i)
        d.push_back(f[i] * static_cast<long>(i));
    return d;
}

bool is_prime_small(long n)
{
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// Smallest |u|,|v| <= bound with u/v = r mod m, by the half-extended
// Euclidean algorithm.
std::optional<Rational> rational_reconstruct(Integer const& r, Integer const& m)
{
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
    Integer r0 = m, r1 = r, t0 = 0, t1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0 || abs(t1) > bound)
        return std::nullopt;
    Rational q(r1, t1);
    q.canonicalize();
    return q;
}

} // namespace

std::vector<Rational> rational_roots(Poly const& p)
{
    if (p.is_zero())
        throw domain_error("roots of the zero polynomial");
    std::vector<Rational> roots;
    Poly f = squarefree_part(p);
    if (f.coeff(0) == 0) {
        roots.emplace_back(0);
        f = f / Poly::x();
    }
    if (f.degree() <= 0)
        return roots;
    if (f.degree() == 1) {
        roots.push_back(-f.coeff(0) / f.coeff(1));
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    auto const F = integer_primitive(f);
    auto const dF = derivative(F);
    // Any root u/v has |u| <= |a_0| and |v| <= |a_n|; reconstruction
    // needs the modulus above twice the square of that bound.
    Integer const a0 = abs(F.front()), an = abs(F.back());
    Integer const height = a0 > an ? a0 : an;
    Integer const need = 2 * height * height + 1;

    for (long p = 101;; ++p) {
        if (!is_prime_small(p))
            continue;
        Integer const P = p;
        if (F.back() % P == 0)
            continue;
        std::vector<Integer> mod_roots;
        bool degenerate = false;
        for (long r = 0; r < p && !degenerate; ++r) {
            Integer const R = r;
            if (eval_mod(F, R, P) == 0) {
                if (eval_mod(dF, R, P) == 0)
                    degenerate = true;
                mod_roots.push_back(R);
            }
        }
        if (degenerate)
            continue;
        Integer modulus = P;
        std::vector<Integer> lifted = mod_roots;
        while (modulus <= need) {
            Integer const next = modulus * modulus;
            for (auto& r : lifted) {
                Integer fr = eval_mod(F, r, next);
                Integer dr = eval_mod(dF, r, next);
                Integer inv;
                mpz_invert(inv.get_mpz_t(), dr.get_mpz_t(), next.get_mpz_t());
                r = r - fr * inv;
                mpz_mod(r.get_mpz_t(), r.get_mpz_t(), next.get_mpz_t());
            }
            modulus = next;
        }
        for (auto const& r : lifted) {
            auto q = rational_reconstruct(r, modulus);
            if (q && f.eval(*q) == 0)
                roots.push_back(*q);
        }
        std::sort(roots.begin(), roots.end());
        return roots;
    }
}

std::optional<std::vector<std::pair<Rational, int>>> split_over_q(Poly const& p)
{
    std::vector<std::pair<Rational, int>> out;
    if (p.is_constant())
        return out;
    int total = 0;
    for (auto const& r : rational_roots(p)) {
        int const m = p.order_at(r);
        out.emplace_back(r, m);
        total += m;
    }
    if (total != p.degree())
        return std::nullopt;
    return out;
}

std::optional<Rational> rational_sqrt(Rational const& q)
{
    if (q < 0)
        return std::nullopt;
    Integer const n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return Rational(sn, sd);
}

Poly crt(std::vector<std::pair<Poly, Poly>> const& residues_and_moduli)
{
    Poly r, m(1);
    for (auto const& [ri, mi] : residues_and_moduli) {
        // r' = r + m * ((ri - r) * m^{-1} mod mi)
        auto const eg = extended_gcd(m, mi);
        if (!eg.g.is_one())
            throw domain_error("crt: moduli not coprime");
        Poly const k = ((ri - r) * eg.s) % mi;
        r = r + m * k;
        m = m * mi;
        r = r % m;
    }
    return r;
}

} // namespace connexion
