#include "connexion/ratfunc.hpp"

#include "connexion/error.hpp"

namespace connexion {

RatFunc::RatFunc(Poly num, Poly den)
    : num_(std::move(num))
    , den_(std::move(den))
{
    if (den_.is_zero())
        throw domain_error("rational function with zero denominator");
    reduce();
}

void RatFunc::reduce()
{
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    Poly const g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    Rational const l = den_.lead();
    if (l != 1) {
        num_ *= 1 / l;
        den_ *= 1 / l;
    }
}

RatFunc& RatFunc::operator+=(RatFunc const& o)
{
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    reduce();
    return *this;
}

RatFunc& RatFunc::operator-=(RatFunc const& o)
{
    return *this += -o;
}

RatFunc& RatFunc::operator*=(RatFunc const& o)
{
    // Cross-cancel first to keep intermediate degrees low.
    Poly const g1 = gcd(num_, o.den_);
    Poly const g2 = gcd(o.num_, den_);
    Poly n = (g1.is_zero() ? num_ : num_ / g1) * (g2.is_zero() ? o.num_ : o.num_ / g2);
    Poly d = (g2.is_zero() ? den_ : den_ / g2) * (g1.is_zero() ? o.den_ : o.den_ / g1);
    num_ = std::move(n);
    den_ = std::move(d);
    reduce();
    return *this;
}

RatFunc& RatFunc::operator/=(RatFunc const& o)
{
    return *this *= o.inverse();
}

RatFunc RatFunc::inverse() const
{
    if (is_zero())
        throw domain_error("inverse of the zero function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const
{
    if (e < 0)
        return inverse().pow(-e);
    return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), trusted{});
}

RatFunc RatFunc::derivative() const
{
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rational RatFunc::eval(Rational const& x) const
{
    Rational const d = den_.eval(x);
    if (d == 0)
        throw domain_error("rational function evaluated at a pole");
    return num_.eval(x) / d;
}

int RatFunc::order_at(Rational const& a) const
{
    if (is_zero())
        throw domain_error("order of the zero function");
    return num_.order_at(a) - den_.order_at(a);
}

int RatFunc::order_at_infinity() const
{
    if (is_zero())
        throw domain_error("order of the zero function");
    return den_.degree() - num_.degree();
}

} // namespace connexion
