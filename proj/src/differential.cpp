#include "connexion/differential.hpp"

#include "connexion/error.hpp"

#include <algorithm>

namespace connexion {

namespace {

std::string point_text(Curve const& c, Point const& P)
{
    if (P.is_infinity())
        return "(inf)";
    if (c.is_elliptic())
        return "(" + P.x().get_str() + "," + P.y().get_str() + ")";
    return "(" + P.x().get_str() + ")";
}

} // namespace

Differential Differential::canonical_regular(Curve const& c)
{
    if (c.is_elliptic())
        return Differential(Function::y(c).inverse());
    return Differential(Function::constant(c, 1));
}

Differential Differential::from_pairing(Function const& h)
{
    if (h.curve().is_elliptic())
        return Differential(h / Function::y(h.curve()));
    return Differential(h);
}

Differential Differential::exact(Function const& g)
{
    return from_pairing(distinguished_derivation(g.curve())(g));
}

Differential& Differential::operator+=(Differential const& o)
{
    coeff_ += o.coeff_;
    return *this;
}

Differential& Differential::operator-=(Differential const& o)
{
    coeff_ -= o.coeff_;
    return *this;
}

Function pairing(Differential const& w, Derivation const& d)
{
    if (w.curve() != d.curve())
        throw domain_error("pairing across different curves");
    return w.coefficient() * d.of_coordinate();
}

Differential dlog(Function const& g)
{
    if (g.is_zero())
        throw domain_error("dlog of the zero function");
    return Differential::exact(g).coefficient() / g;
}

LaurentSeries local_form_expansion(Differential const& w, Point const& P, int n)
{
    Curve const& c = w.curve();
    if (!c.on_completion(P))
        throw input_error("point is not on the curve or its completion");
    if (w.is_zero())
        return {};
    for (int work = n + 4; work <= 1 << 14; work *= 2) {
        auto const ch = local_chart(c, P, work);
        auto const s = expand_in_chart(w.coefficient(), ch, work) * ch.dx_dz;
        if (!s.is_zero_to_precision() && s.relative_precision() >= n)
            return s.truncated(s.valuation() + n);
    }
    throw domain_error("local_form_expansion: precision budget exhausted");
}

int form_order(Differential const& w, Point const& P)
{
    if (w.is_zero())
        return valuation_infinity;
    return local_form_expansion(w, P, 1).valuation();
}

Rational residue(Differential const& w, Point const& P)
{
    if (w.is_zero())
        return 0;
    int const v = form_order(w, P);
    if (v >= 0)
        return 0;
    return local_form_expansion(w, P, -v).coeff(-1);
}

bool is_regular_on_X(Differential const& w)
{
    // Against the canonical regular form, which is a unit on X.
    return pairing(w, distinguished_derivation(w.curve())).in_coordinate_ring();
}

std::vector<Point> poles_on_X(Differential const& w)
{
    Curve const& c = w.curve();
    Function const h = pairing(w, distinguished_derivation(c));
    Poly den = h.canonical().d;
    if (!c.is_elliptic())
        for (auto const& a : c.punctures())
            while (Poly::linear(a).divides(den))
                den = den / Poly::linear(a);
    auto roots = split_over_q(den);
    if (!roots)
        throw unsupported_error("pole on X at a point that is not Q-rational");
    std::vector<Point> out;
    for (auto const& [x0, m] : *roots) {
        auto pts = c.points_over(x0);
        if (pts.empty())
            throw unsupported_error("pole on X at a point that is not Q-rational");
        for (auto const& P : pts)
            if (form_order(w, P) < 0)
                out.push_back(P);
    }
    return out;
}

Divisor res_map(Differential const& w)
{
    Curve const& c = w.curve();
    Divisor D;
    for (auto const& P : poles_on_X(w)) {
        int const ord = form_order(w, P);
        if (ord < -1)
            throw domain_error("pole of order " + std::to_string(-ord) + " at " + point_text(c, P) + " on X");
        Rational const r = residue(w, P);
        if (r.get_den() != 1)
            throw domain_error("non-integer residue " + r.get_str() + " at " + point_text(c, P) + " on X");
        D.add(P, static_cast<int>(r.get_num().get_si()));
    }
    return D;
}

Rational total_residue_completion(Differential const& w, ResidueOptions const& opts)
{
    Curve const& c = w.curve();
    if (w.is_zero())
        return 0;
    Rational total = 0;
    for (auto const& P : poles_on_X(w))
        total += residue(w, P);
    for (auto const& P : c.completion_punctures()) {
        Rational r = residue(w, P);
        if (opts.negate_at_infinity && P.is_infinity())
            r = -r;
        total += r;
    }
    return total;
}

} // namespace connexion
