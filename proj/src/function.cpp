#include "connexion/function.hpp"

#include "connexion/error.hpp"

namespace connexion {

namespace {

void require_same(Curve const& a, Curve const& b)
{
    if (a != b)
        throw domain_error("functions live on different curves");
}

} // namespace

Function::Function(Curve curve, RatFunc a, RatFunc b)
    : curve_(std::move(curve))
    , a_(std::move(a))
    , b_(std::move(b))
{
    if (!curve_.is_elliptic() && !b_.is_zero())
        throw domain_error("y-component on a punctured line");
}

Function Function::constant(Curve const& c, Rational const& v)
{
    return Function(c, RatFunc(v));
}

Function Function::coordinate(Curve const& c)
{
    return Function(c, RatFunc(Poly::x()));
}

Function Function::y(Curve const& c)
{
    if (!c.is_elliptic())
        throw domain_error("y on a punctured line");
    return Function(c, RatFunc(), RatFunc(1));
}

Function& Function::operator+=(Function const& o)
{
    require_same(curve_, o.curve_);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

Function& Function::operator-=(Function const& o)
{
    require_same(curve_, o.curve_);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

Function& Function::operator*=(Function const& o)
{
    require_same(curve_, o.curve_);
    if (!curve_.is_elliptic()) {
        a_ *= o.a_;
        return *this;
    }
    RatFunc const f(curve_.cubic());
    RatFunc na = a_ * o.a_;
    if (!b_.is_zero() && !o.b_.is_zero())
        na += b_ * o.b_ * f;
    RatFunc nb;
    if (!o.b_.is_zero())
        nb += a_ * o.b_;
    if (!b_.is_zero())
        nb += b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

Function& Function::operator/=(Function const& o)
{
    return *this *= o.inverse();
}

Function operator*(Function a, Rational const& s)
{
    a.a_ *= RatFunc(s);
    a.b_ *= RatFunc(s);
    return a;
}

bool operator==(Function const& f, Function const& g)
{
    return f.curve_ == g.curve_ && f.a_ == g.a_ && f.b_ == g.b_;
}

Function Function::inverse() const
{
    if (is_zero())
        throw domain_error("inverse of the zero function");
    if (b_.is_zero())
        return Function(curve_, a_.inverse());
    RatFunc const n = norm();
    return Function(curve_, a_ / n, -b_ / n);
}

Function Function::pow(int e) const
{
    if (e < 0)
        return inverse().pow(-e);
    if (b_.is_zero())
        return Function(curve_, a_.pow(e));
    Function r = constant(curve_, 1), base = *this;
    while (e) {
        if (e & 1)
            r *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return r;
}

Function Function::conjugate() const
{
    return Function(curve_, a_, -b_);
}

RatFunc Function::norm() const
{
    if (b_.is_zero())
        return a_ * a_;
    return a_ * a_ - b_ * b_ * RatFunc(curve_.cubic());
}

Function::Canonical Function::canonical() const
{
    Poly const d = lcm(a_.den(), b_.den());
    return { a_.num() * (d / a_.den()), b_.num() * (d / b_.den()), d };
}

bool Function::in_coordinate_ring() const
{
    if (curve_.is_elliptic())
        return a_.is_polynomial() && b_.is_polynomial();
    Poly rest = a_.den();
    for (auto const& p : curve_.punctures()) {
        Poly const lin = Poly::linear(p);
        while (lin.divides(rest))
            rest = rest / lin;
    }
    return rest.is_constant();
}

Function Derivation::of_coordinate() const
{
    return (*this)(Function::coordinate(curve_));
}

Function Derivation::of_y() const
{
    return (*this)(Function::y(curve_));
}

Function Derivation::operator()(Function const& g) const
{
    if (g.curve() != curve_)
        throw domain_error("derivation applied on another curve");
    if (!curve_.is_elliptic())
        return Function(curve_, g.a().derivative());
    // d(A + B y) = A' y + B' y^2 + B f'/2
    RatFunc const f(curve_.cubic());
    RatFunc const half_df(curve_.cubic().derivative() * Rational(1, 2));
    RatFunc na;
    if (!g.b().is_zero())
        na = g.b().derivative() * f + g.b() * half_df;
    return Function(curve_, na, g.a().derivative());
}

Function Derivation::apply_n(Function g, int n) const
{
    for (int i = 0; i < n; ++i)
        g = (*this)(g);
    return g;
}

Derivation distinguished_derivation(Curve const& c)
{
    return Derivation(c);
}

UnitGroupDesc units(Curve const& c)
{
    UnitGroupDesc u;
    if (!c.is_elliptic())
        for (auto const& a : c.punctures())
            u.generators.emplace_back(c, RatFunc(Poly::linear(a)));
    return u;
}

std::vector<Function> ring_generators(Curve const& c)
{
    std::vector<Function> g{ Function::coordinate(c) };
    if (c.is_elliptic()) {
        g.push_back(Function::y(c));
    } else {
        for (auto const& a : c.punctures())
            g.emplace_back(c, RatFunc(Poly(1), Poly::linear(a)));
    }
    return g;
}

LocalChart local_chart(Curve const& c, Point const& P, int work)
{
    if (!c.on_completion(P))
        throw input_error("point is not on the curve or its completion");
    LocalChart ch;
    ch.point = P;
    int const n = work + 2;
    if (!c.is_elliptic()) {
        if (P.is_infinity()) {
            ch.x = LaurentSeries::monomial(1, -1);
            ch.dx_dz = LaurentSeries::monomial(-1, -2);
        } else {
            ch.x = LaurentSeries(0, { P.x(), Rational(1) }, LaurentSeries::exact);
            ch.dx_dz = LaurentSeries::constant(1);
        }
        return ch;
    }
    if (P.is_infinity()) {
        auto const S = series_sqrt(
            LaurentSeries(0, { 1, 0, 0, 0, c.a(), 0, c.b() }, LaurentSeries::exact), 1, n);
        ch.x = LaurentSeries::monomial(1, -2);
        ch.y = S * LaurentSeries::monomial(1, -3);
        ch.dx_dz = LaurentSeries::monomial(-2, -3);
        return ch;
    }
    if (P.y() != 0) {
        ch.x = LaurentSeries(0, { P.x(), Rational(1) }, LaurentSeries::exact);
        ch.y = series_sqrt(LaurentSeries::from_poly(c.cubic().taylor_shift(P.x())), P.y(), n);
        ch.dx_dz = LaurentSeries::constant(1);
        return ch;
    }
    // Ramified: y = z, x = x0 + u(z) with c1 u + c2 u^2 + u^3 = z^2.
    Rational const c1 = c.cubic().derivative().eval(P.x());
    Rational const c2 = 3 * P.x();
    int const top = n + 2;
    std::vector<Rational> u(static_cast<size_t>(top), Rational(0));
    std::vector<Rational> u2(static_cast<size_t>(top), Rational(0));
    for (int k = 2; k < top; ++k) {
        // [u^2]_k and [u^3]_k use only u_j with j <= k - 2.
        Rational sq = 0;
        for (int i = 2; i <= k - 2; ++i)
            sq += u[static_cast<size_t>(i)] * u[static_cast<size_t>(k - i)];
        u2[static_cast<size_t>(k)] = sq;
        Rational cube = 0;
        for (int i = 2; i <= k - 4; ++i)
            cube += u[static_cast<size_t>(i)] * u2[static_cast<size_t>(k - i)];
        Rational rhs = (k == 2 ? Rational(1) : Rational(0)) - c2 * sq - cube;
        u[static_cast<size_t>(k)] = rhs / c1;
        // u2[k] needs u_k terms too: u_0 = u_1 = 0 so no correction.
    }
    u[0] = P.x();
    ch.x = LaurentSeries(0, std::move(u), top);
    ch.y = LaurentSeries::monomial(1, 1);
    ch.dx_dz = ch.x.derivative();
    return ch;
}

namespace {

LaurentSeries eval_ratfunc(RatFunc const& r, LaurentSeries const& x, int work)
{
    if (r.is_zero())
        return {};
    auto const num = x.compose_poly(r.num());
    if (r.den().is_one())
        return num;
    return num * x.compose_poly(r.den()).inverse(work);
}

} // namespace

LaurentSeries expand_in_chart(Function const& g, LocalChart const& chart, int work)
{
    LaurentSeries s = eval_ratfunc(g.a(), chart.x, work);
    if (!g.b().is_zero())
        s = s + eval_ratfunc(g.b(), chart.x, work) * chart.y;
    return s;
}

LaurentSeries local_expansion(Function const& g, Point const& P, int n)
{
    if (n < 1)
        throw input_error("local_expansion: order must be at least 1");
    if (!g.curve().on_completion(P))
        throw input_error("point is not on the curve or its completion");
    if (g.is_zero())
        return {};
    for (int work = n + 4; work <= 1 << 14; work *= 2) {
        auto const ch = local_chart(g.curve(), P, work);
        auto const s = expand_in_chart(g, ch, work);
        if (!s.is_zero_to_precision() && s.relative_precision() >= n)
            return s.truncated(s.valuation() + n);
    }
    throw domain_error("local_expansion: precision budget exhausted");
}

int valuation(Function const& g, Point const& P)
{
    if (g.is_zero())
        return valuation_infinity;
    return local_expansion(g, P, 1).valuation();
}

} // namespace connexion
