#include "connexion/curve.hpp"

#include "connexion/error.hpp"

#include <algorithm>

namespace connexion {

Point Point::affine(Rational x, Rational y)
{
    Point p;
    p.x_ = std::move(x);
    p.y_ = std::move(y);
    return p;
}

Point Point::infinity()
{
    Point p;
    p.infinity_ = true;
    return p;
}

bool operator==(Point const& a, Point const& b)
{
    if (a.infinity_ || b.infinity_)
        return a.infinity_ == b.infinity_;
    return a.x_ == b.x_ && a.y_ == b.y_;
}

bool operator<(Point const& a, Point const& b)
{
    if (a.infinity_ || b.infinity_)
        return !a.infinity_ && b.infinity_;
    if (a.x_ != b.x_)
        return a.x_ < b.x_;
    return a.y_ < b.y_;
}

struct Curve::Data {
    CurveKind kind;
    std::vector<Rational> punctures;
    Rational a, b;
    Poly cubic;
};

Curve Curve::punctured_line(std::vector<Rational> punctures)
{
    for (size_t i = 0; i < punctures.size(); ++i)
        for (size_t j = i + 1; j < punctures.size(); ++j)
            if (punctures[i] == punctures[j])
                throw input_error("duplicated puncture " + punctures[i].get_str());
    auto d = std::make_shared<Data>();
    d->kind = CurveKind::punctured_line;
    d->punctures = std::move(punctures);
    return Curve(std::move(d));
}

Curve Curve::elliptic(Rational const& a, Rational const& b)
{
    auto d = std::make_shared<Data>();
    d->kind = CurveKind::elliptic;
    d->a = a;
    d->b = b;
    d->cubic = Poly(std::vector<Rational>{ b, a, Rational(0), Rational(1) });
    Curve c(std::move(d));
    if (c.discriminant() == 0)
        throw input_error("singular cubic: x^3 + (" + a.get_str() + ")x + (" + b.get_str() + ") has zero discriminant");
    return c;
}

CurveKind Curve::kind() const { return d_->kind; }
std::vector<Rational> const& Curve::punctures() const { return d_->punctures; }
Rational const& Curve::a() const { return d_->a; }
Rational const& Curve::b() const { return d_->b; }

Poly const& Curve::cubic() const
{
    if (!is_elliptic())
        throw domain_error("cubic() on a punctured line");
    return d_->cubic;
}

Rational Curve::discriminant() const
{
    if (!is_elliptic())
        throw domain_error("discriminant() on a punctured line");
    return -16 * (4 * d_->a * d_->a * d_->a + 27 * d_->b * d_->b);
}

bool Curve::contains(Point const& P) const
{
    if (P.is_infinity())
        return false;
    if (is_elliptic())
        return P.y() * P.y() == d_->cubic.eval(P.x());
    if (P.y() != 0)
        return false;
    return std::find(d_->punctures.begin(), d_->punctures.end(), P.x()) == d_->punctures.end();
}

bool Curve::is_puncture(Point const& P) const
{
    if (P.is_infinity())
        return true;
    if (is_elliptic() || P.y() != 0)
        return false;
    return std::find(d_->punctures.begin(), d_->punctures.end(), P.x()) != d_->punctures.end();
}

std::vector<Point> Curve::completion_punctures() const
{
    std::vector<Point> out;
    if (!is_elliptic())
        for (auto const& a : d_->punctures)
            out.push_back(Point::affine(a));
    out.push_back(Point::infinity());
    return out;
}

std::vector<Point> Curve::points_over(Rational const& x0) const
{
    std::vector<Point> out;
    if (!is_elliptic()) {
        auto P = Point::affine(x0);
        if (contains(P))
            out.push_back(P);
        return out;
    }
    Rational const v = d_->cubic.eval(x0);
    if (auto r = rational_sqrt(v)) {
        if (*r == 0) {
            out.push_back(Point::affine(x0, 0));
        } else {
            out.push_back(Point::affine(x0, -*r));
            out.push_back(Point::affine(x0, *r));
        }
    }
    return out;
}

Point Curve::involution(Point const& P) const
{
    if (!is_elliptic() || P.is_infinity())
        return P;
    return Point::affine(P.x(), -P.y());
}

bool operator==(Curve const& a, Curve const& b)
{
    if (a.d_ == b.d_)
        return true;
    if (a.d_->kind != b.d_->kind)
        return false;
    if (a.d_->kind == CurveKind::elliptic)
        return a.d_->a == b.d_->a && a.d_->b == b.d_->b;
    return a.d_->punctures == b.d_->punctures;
}

Curve make_curve(CurveSpec const& spec)
{
    if (spec.kind == CurveKind::elliptic)
        return Curve::elliptic(spec.a, spec.b);
    return Curve::punctured_line(spec.punctures);
}

} // namespace connexion
