#include "connexion/divisor.hpp"

#include "connexion/error.hpp"

#include <algorithm>

namespace connexion {

Divisor::Divisor(std::initializer_list<std::pair<Point const, int>> terms)
{
    for (auto const& [P, n] : terms)
        add(P, n);
}

Divisor Divisor::point(Point const& P, int n)
{
    Divisor d;
    d.add(P, n);
    return d;
}

int Divisor::coefficient(Point const& P) const
{
    auto it = terms_.find(P);
    return it == terms_.end() ? 0 : it->second;
}

void Divisor::add(Point const& P, int n)
{
    if (n == 0)
        return;
    auto [it, fresh] = terms_.emplace(P, n);
    if (!fresh) {
        it->second += n;
        if (it->second == 0)
            terms_.erase(it);
    }
}

std::vector<Point> Divisor::support() const
{
    std::vector<Point> s;
    for (auto const& [P, n] : terms_)
        s.push_back(P);
    return s;
}

long Divisor::degree() const
{
    long d = 0;
    for (auto const& [P, n] : terms_)
        d += n;
    return d;
}

Divisor Divisor::positive_part() const
{
    Divisor d;
    for (auto const& [P, n] : terms_)
        if (n > 0)
            d.add(P, n);
    return d;
}

Divisor Divisor::negative_part() const
{
    Divisor d;
    for (auto const& [P, n] : terms_)
        if (n < 0)
            d.add(P, -n);
    return d;
}

Divisor Divisor::operator-() const
{
    Divisor d;
    for (auto const& [P, n] : terms_)
        d.add(P, -n);
    return d;
}

Divisor& Divisor::operator+=(Divisor const& o)
{
    for (auto const& [P, n] : o.terms_)
        add(P, n);
    return *this;
}

Divisor& Divisor::operator-=(Divisor const& o)
{
    for (auto const& [P, n] : o.terms_)
        add(P, -n);
    return *this;
}

Divisor operator*(int k, Divisor const& d)
{
    Divisor r;
    for (auto const& [P, n] : d.terms_)
        r.add(P, k * n);
    return r;
}

void require_on_curve(Curve const& c, Divisor const& D)
{
    for (auto const& [P, n] : D.terms())
        if (!c.contains(P))
            throw input_error("divisor support point is not on X");
}

namespace {

// Rational x-coordinates over which g may have zeros or poles; throws
// when some of them are irrational or carry non-rational points.
std::vector<Rational> candidate_abscissae(Function const& g)
{
    Curve const& c = g.curve();
    std::vector<Poly> polys;
    if (c.is_elliptic()) {
        auto const can = g.canonical();
        polys.push_back(can.d);
        polys.push_back(can.p * can.p - can.q * can.q * c.cubic());
    } else {
        polys.push_back(g.a().num());
        polys.push_back(g.a().den());
    }
    std::vector<Rational> xs;
    for (auto const& p : polys) {
        auto roots = split_over_q(p);
        if (!roots)
            throw unsupported_error("zeros or poles at points that are not Q-rational");
        for (auto const& [r, m] : *roots) {
            if (c.is_elliptic() && !rational_sqrt(c.cubic().eval(r)))
                throw unsupported_error("zeros or poles at points that are not Q-rational");
            xs.push_back(r);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

} // namespace

Divisor divisor_of(Function const& g)
{
    if (g.is_zero())
        throw domain_error("divisor of the zero function");
    Curve const& c = g.curve();
    Divisor D;
    for (auto const& x0 : candidate_abscissae(g))
        for (auto const& P : c.points_over(x0))
            D.add(P, valuation(g, P));
    return D;
}

Divisor completion_divisor_of(Function const& g)
{
    Divisor D = divisor_of(g);
    for (auto const& P : g.curve().completion_punctures())
        D.add(P, valuation(g, P));
    return D;
}

namespace {

void require_elliptic_point(Curve const& c, Point const& P)
{
    if (!c.is_elliptic())
        throw domain_error("group law requires an elliptic curve");
    if (!P.is_infinity() && !c.contains(P))
        throw input_error("point is not on the curve");
}

} // namespace

Point ell_neg(Curve const& c, Point const& P)
{
    require_elliptic_point(c, P);
    return c.involution(P);
}

Point ell_add(Curve const& c, Point const& P, Point const& Q)
{
    require_elliptic_point(c, P);
    require_elliptic_point(c, Q);
    if (P.is_infinity())
        return Q;
    if (Q.is_infinity())
        return P;
    if (P.x() == Q.x() && P.y() == -Q.y())
        return Point::infinity();
    Rational lambda;
    if (P == Q)
        lambda = (3 * P.x() * P.x() + c.a()) / (2 * P.y());
    else
        lambda = (Q.y() - P.y()) / (Q.x() - P.x());
    Rational const x3 = lambda * lambda - P.x() - Q.x();
    Rational const y3 = lambda * (P.x() - x3) - P.y();
    return Point::affine(x3, y3);
}

Point ell_mul(Curve const& c, long n, Point const& P)
{
    require_elliptic_point(c, P);
    Point base = n < 0 ? ell_neg(c, P) : P;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    Point acc = Point::infinity();
    while (k) {
        if (k & 1u)
            acc = ell_add(c, acc, base);
        k >>= 1;
        if (k)
            base = ell_add(c, base, base);
    }
    return acc;
}

int torsion_order(Curve const& c, Point const& P)
{
    // Mazur: rational torsion has order at most 12.
    Point Q = P;
    for (int k = 1; k <= 12; ++k) {
        if (Q.is_infinity())
            return k;
        Q = ell_add(c, Q, P);
    }
    return 0;
}

Point divisor_sum(Curve const& c, Divisor const& D)
{
    Point S = Point::infinity();
    for (auto const& [P, n] : D.terms())
        S = ell_add(c, S, ell_mul(c, n, P));
    return S;
}

namespace {

Function vertical(Curve const& c, Point const& P)
{
    if (P.is_infinity())
        return Function::constant(c, 1);
    return Function(c, RatFunc(Poly::linear(P.x())));
}

// g with div_X(g) = (P) + (Q) - (P + Q).
Function chord_over_vertical(Curve const& c, Point const& P, Point const& Q)
{
    if (P.is_infinity() || Q.is_infinity())
        return Function::constant(c, 1);
    if (P.x() == Q.x() && P.y() == -Q.y())
        return vertical(c, P);
    Rational lambda;
    if (P == Q)
        lambda = (3 * P.x() * P.x() + c.a()) / (2 * P.y());
    else
        lambda = (Q.y() - P.y()) / (Q.x() - P.x());
    // y - y_P - lambda (x - x_P)
    Function const line(c, RatFunc(Poly(std::vector<Rational>{ lambda * P.x() - P.y(), -lambda })), RatFunc(1));
    return line / vertical(c, ell_add(c, P, Q));
}

} // namespace

Function normalize_leading(Function const& g)
{
    if (g.is_zero())
        throw domain_error("normalizing the zero function");
    auto const can = g.canonical();
    Rational lead;
    if (can.q.is_zero() || (!can.p.is_zero() && 2 * can.p.degree() > 2 * can.q.degree() + 3))
        lead = can.p.lead();
    else
        lead = can.q.lead();
    return g * (1 / lead);
}

Function function_with_divisor(Curve const& c, Divisor const& D)
{
    require_on_curve(c, D);
    if (!c.is_elliptic()) {
        RatFunc r(1);
        for (auto const& [P, n] : D.terms())
            r *= RatFunc(Poly::linear(P.x())).pow(n);
        return Function(c, r);
    }
    Point R = Point::infinity();
    Function H = Function::constant(c, 1);
    for (auto const& [P0, n0] : D.terms()) {
        Point P = P0;
        int m = n0;
        if (m < 0) {
            // n (P) = |n| (-P) + div(v_P^n)
            H *= vertical(c, P).pow(m);
            P = ell_neg(c, P);
            m = -m;
        }
        // m (P) = (T) + div(F) by double-and-add.
        Point T = P;
        Function F = Function::constant(c, 1);
        int top = 31;
        while (top >= 0 && !((m >> top) & 1))
            --top;
        for (int bit = top - 1; bit >= 0; --bit) {
            F = F * F * chord_over_vertical(c, T, T);
            T = ell_add(c, T, T);
            if ((m >> bit) & 1) {
                F *= chord_over_vertical(c, T, P);
                T = ell_add(c, T, P);
            }
        }
        H *= F * chord_over_vertical(c, R, T);
        R = ell_add(c, R, T);
    }
    if (!R.is_infinity())
        throw domain_error("divisor is not principal");
    return normalize_leading(H);
}

PrincipalityCertificate is_principal(Curve const& c, Divisor const& D)
{
    require_on_curve(c, D);
    PrincipalityCertificate cert;
    if (c.is_elliptic()) {
        Point const S = divisor_sum(c, D);
        if (!S.is_infinity()) {
            cert.verdict = Verdict::not_principal;
            cert.obstruction = S;
            return cert;
        }
    }
    cert.verdict = Verdict::principal;
    cert.witness = function_with_divisor(c, D);
    return cert;
}

} // namespace connexion
