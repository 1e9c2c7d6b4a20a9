#include "connexion/ideal.hpp"

#include "connexion/error.hpp"
#include "connexion/linalg.hpp"

#include <algorithm>
#include <set>

namespace connexion {

FractionalIdeal::FractionalIdeal(Curve curve, Divisor divisor, std::vector<Function> generators)
    : curve_(std::move(curve))
    , divisor_(std::move(divisor))
    , gens_(std::move(generators))
{
    if (gens_.empty())
        throw domain_error("fractional ideal without generators");
}

namespace {

Poly x_minus(Rational const& x0, int k)
{
    return Poly::linear(x0).pow(static_cast<unsigned>(k));
}

// Integral ideal {g in O : v_P(g) >= E(P)} for effective E, as
// c(x) * (a(x), y - b(x)) in Mumford form.
struct Mumford {
    Poly c, a, b;
};

Mumford mumford_of_effective(Curve const& curve, Divisor const& E)
{
    Mumford m{ Poly(1), Poly(1), Poly() };
    std::set<Rational> xs;
    for (auto const& [P, n] : E.terms())
        xs.insert(P.x());
    std::vector<std::pair<Poly, Poly>> congruences;
    for (auto const& x0 : xs) {
        auto const pts = curve.points_over(x0);
        if (pts.size() == 1) {
            int const n = E.coefficient(pts[0]);
            m.c *= x_minus(x0, n / 2);
            if (n % 2) {
                m.a *= Poly::linear(x0);
                congruences.emplace_back(Poly(), Poly::linear(x0));
            }
            continue;
        }
        int const n1 = E.coefficient(pts[0]), n2 = E.coefficient(pts[1]);
        int const k = std::min(n1, n2);
        m.c *= x_minus(x0, k);
        Point const* P = nullptr;
        int rest = 0;
        if (n1 > k) {
            P = &pts[0];
            rest = n1 - k;
        } else if (n2 > k) {
            P = &pts[1];
            rest = n2 - k;
        }
        if (!P)
            continue;
        // y - b vanishes to order `rest` at P: b = y mod (x - x0)^rest.
        auto const ch = local_chart(curve, *P, rest + 2);
        std::vector<Rational> s;
        for (int i = 0; i < rest; ++i)
            s.push_back(ch.y.coeff(i));
        Poly const modulus = x_minus(x0, rest);
        m.a *= modulus;
        congruences.emplace_back(Poly(std::move(s)).taylor_shift(-x0), modulus);
    }
    m.b = crt(congruences);
    return m;
}

} // namespace

FractionalIdeal ideal_of_divisor(Curve const& c, Divisor const& D)
{
    require_on_curve(c, D);
    if (!c.is_elliptic()) {
        RatFunc g(1);
        for (auto const& [P, n] : D.terms())
            g *= RatFunc(Poly::linear(P.x())).pow(-n);
        return FractionalIdeal(c, D, { Function(c, g) });
    }
    // Clear the poles with e(x) so that div(e) - D >= 0, then
    // I_D = (1/e) I_{-(div(e) - D)}.
    std::map<Rational, int> exps;
    for (auto const& [P, n] : D.terms()) {
        if (n <= 0)
            continue;
        int const k = P.y() == 0 ? (n + 1) / 2 : n;
        exps[P.x()] = std::max(exps[P.x()], k);
    }
    Poly e(1);
    Divisor E = -D;
    for (auto const& [x0, k] : exps) {
        e *= x_minus(x0, k);
        auto const pts = c.points_over(x0);
        for (auto const& P : pts)
            E.add(P, pts.size() == 1 ? 2 * k : k);
    }
    auto const m = mumford_of_effective(c, E);
    RatFunc const scale(m.c, e);
    Function const unit = Function(c, scale);
    if (m.a.is_one())
        return FractionalIdeal(c, D, { unit });
    Function const g1(c, scale * RatFunc(m.a));
    Function const g2(c, scale * RatFunc(-m.b), scale);
    return FractionalIdeal(c, D, { g1, g2 });
}

bool membership(Function const& g, FractionalIdeal const& I)
{
    Curve const& c = I.curve();
    if (g.curve() != c)
        throw domain_error("membership across different curves");
    if (g.is_zero())
        return true;
    Poly den = c.is_elliptic() ? g.canonical().d : g.a().den();
    auto roots = split_over_q(den);
    if (!roots)
        return false;
    std::set<Point> pts;
    for (auto const& [x0, m] : *roots) {
        auto const over = c.points_over(x0);
        if (over.empty() && (c.is_elliptic() || !c.is_puncture(Point::affine(x0))))
            return false;
        pts.insert(over.begin(), over.end());
    }
    for (auto const& [P, n] : I.divisor().terms())
        pts.insert(P);
    for (auto const& P : pts)
        if (valuation(g, P) < -I.divisor().coefficient(P))
            return false;
    return true;
}

FractionalIdeal ideal_mul(FractionalIdeal const& I, FractionalIdeal const& J)
{
    if (I.curve() != J.curve())
        throw domain_error("ideal_mul across different curves");
    auto reduced = ideal_of_divisor(I.curve(), I.divisor() + J.divisor());
    for (auto const& g : I.generators())
        for (auto const& h : J.generators())
            if (!membership(g * h, reduced))
                throw domain_error("ideal_mul: product generator outside I_{D1+D2}");
    return reduced;
}

FractionalIdeal ideal_inverse(FractionalIdeal const& I)
{
    return ideal_of_divisor(I.curve(), -I.divisor());
}

namespace {

bool is_unit(Function const& u)
{
    if (u.is_zero())
        return false;
    return u.in_coordinate_ring() && u.inverse().in_coordinate_ring();
}

// Monomials x^i, x^i y of O(X) on an elliptic curve, by pole order at
// infinity (2i, 2i + 3), up to `weight`.
std::vector<Function> monomials_up_to(Curve const& c, int weight)
{
    std::vector<std::pair<int, Function>> m;
    for (int i = 0; 2 * i <= weight; ++i)
        m.emplace_back(2 * i, Function(c, RatFunc(Poly::monomial(1, i))));
    for (int i = 0; 2 * i + 3 <= weight; ++i)
        m.emplace_back(2 * i + 3, Function(c, RatFunc(), RatFunc(Poly::monomial(1, i))));
    std::stable_sort(m.begin(), m.end(), [](auto const& l, auto const& r) { return l.first < r.first; });
    std::vector<Function> out;
    for (auto& [w, f] : m)
        out.push_back(std::move(f));
    return out;
}

} // namespace

BezoutSystem bezout(FractionalIdeal const& I, FractionalIdeal const& J)
{
    Curve const& c = I.curve();
    if (J.curve() != c)
        throw domain_error("bezout across different curves");
    if (!(I.divisor() + J.divisor()).is_zero())
        throw domain_error("bezout: I J is not the unit ideal");

    struct Product {
        size_t i, j;
        Function value;
    };
    std::vector<Product> products;
    for (size_t i = 0; i < I.generators().size(); ++i)
        for (size_t j = 0; j < J.generators().size(); ++j)
            products.push_back({ i, j, I.generators()[i] * J.generators()[j] });

    for (auto const& p : products) {
        if (is_unit(p.value)) {
            return { { I.generators()[p.i] / p.value }, { J.generators()[p.j] } };
        }
    }
    if (!c.is_elliptic())
        throw domain_error("bezout: no unit product of principal generators");
    for (auto const& p : products)
        if (!p.value.in_coordinate_ring())
            throw domain_error("bezout: generator product outside O(X)");

    size_t last_count = 0;
    for (int weight = 0; weight <= 64; ++weight) {
        auto const mons = monomials_up_to(c, weight);
        if (mons.size() == last_count)
            continue;
        last_count = mons.size();
        // Columns: (product k, monomial m); rows: coefficients of x^r and
        // x^r y.
        std::vector<Function::Canonical> cols;
        int top = 0;
        for (auto const& p : products)
            for (auto const& mu : mons) {
                auto can = (mu * p.value).canonical();
                top = std::max({ top, can.p.degree(), can.q.degree() });
                cols.push_back(std::move(can));
            }
        size_t const nrows = 2 * static_cast<size_t>(top + 1);
        RationalMatrix A(nrows, std::vector<Rational>(cols.size(), Rational(0)));
        for (size_t k = 0; k < cols.size(); ++k)
            for (int r = 0; r <= top; ++r) {
                A[static_cast<size_t>(r)][k] = cols[k].p.coeff(r);
                A[static_cast<size_t>(top + 1 + r)][k] = cols[k].q.coeff(r);
            }
        std::vector<Rational> rhs(nrows, Rational(0));
        rhs[0] = 1;
        auto sol = solve_linear(std::move(A), std::move(rhs));
        if (!sol)
            continue;
        BezoutSystem bs;
        for (size_t k = 0; k < products.size(); ++k) {
            Function coef = Function::constant(c, 0);
            for (size_t m = 0; m < mons.size(); ++m) {
                auto const& u = (*sol)[k * mons.size() + m];
                if (u != 0)
                    coef += mons[m] * u;
            }
            if (coef.is_zero())
                continue;
            bs.alpha.push_back(coef * I.generators()[products[k].i]);
            bs.beta.push_back(J.generators()[products[k].j]);
        }
        return bs;
    }
    throw domain_error("bezout: no combination found within the degree budget");
}

ConnectionForm connection_form(FractionalIdeal const& I, FractionalIdeal const& J)
{
    auto bs = bezout(I, J);
    Differential w = Differential::zero(I.curve());
    for (size_t k = 0; k < bs.alpha.size(); ++k)
        w += bs.alpha[k] * Differential::exact(bs.beta[k]);
    return { w, std::move(bs) };
}

ConnectionForm connection_form(Curve const& c, Divisor const& D)
{
    return connection_form(ideal_of_divisor(c, D), ideal_of_divisor(c, -D));
}

} // namespace connexion
