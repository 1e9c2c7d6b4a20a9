#pragma once

#include "connexion/poly.hpp"

namespace connexion {

// Element of Q(x) as a reduced fraction with monic denominator.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(Rational const& c) : num_(c), den_(1) {}
    RatFunc(long c) : RatFunc(Rational(c)) {}
    RatFunc(Poly p) : num_(std::move(p)), den_(1) {}
    RatFunc(Poly num, Poly den);

    Poly const& num() const { return num_; }
    Poly const& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return den_.is_one() && num_.is_constant(); }

    RatFunc operator-() const { return { -num_, den_, trusted{} }; }
    RatFunc& operator+=(RatFunc const& o);
    RatFunc& operator-=(RatFunc const& o);
    RatFunc& operator*=(RatFunc const& o);
    RatFunc& operator/=(RatFunc const& o);
    friend RatFunc operator+(RatFunc a, RatFunc const& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, RatFunc const& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, RatFunc const& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, RatFunc const& b) { return a /= b; }
    friend bool operator==(RatFunc const& a, RatFunc const& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RatFunc inverse() const;
    RatFunc pow(int e) const;
    RatFunc derivative() const;
    Rational eval(Rational const& x) const;

    // Order of vanishing at x = a (negative for poles); zero -> throws.
    int order_at(Rational const& a) const;
    // deg den - deg num.
    int order_at_infinity() const;

private:
    struct trusted {};
    RatFunc(Poly num, Poly den, trusted) : num_(std::move(num)), den_(std::move(den)) {}
    void reduce();

    Poly num_, den_;
};

} // namespace connexion
