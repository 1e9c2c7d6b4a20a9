#pragma once

#include "connexion/curve.hpp"
#include "connexion/laurent.hpp"
#include "connexion/ratfunc.hpp"

#include <climits>
#include <vector>

namespace connexion {

/* Element A(x) + B(x) y of the function field K of a curve.
 *
 * On a punctured line B is always zero and x is the coordinate t. The
 * pair (A, B) of reduced fractions is a unique representative; the
 * canonical form (p + q y)/d with d monic and gcd(p, q, d) = 1 is derived
 * from it by `canonical()`.
 */
class Function {
public:
    Function(Curve curve, RatFunc a, RatFunc b = {});

    static Function constant(Curve const& c, Rational const& v);
    // t on a line, x on an elliptic curve.
    static Function coordinate(Curve const& c);
    static Function y(Curve const& c);

    Curve const& curve() const { return curve_; }
    RatFunc const& a() const { return a_; }
    RatFunc const& b() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_constant() const { return b_.is_zero() && a_.is_constant(); }
    // Only meaningful when is_constant().
    Rational constant_value() const { return a_.num().coeff(0); }

    Function operator-() const { return { curve_, -a_, -b_ }; }
    Function& operator+=(Function const& o);
    Function& operator-=(Function const& o);
    Function& operator*=(Function const& o);
    Function& operator/=(Function const& o);
    friend Function operator+(Function a, Function const& b) { return a += b; }
    friend Function operator-(Function a, Function const& b) { return a -= b; }
    friend Function operator*(Function a, Function const& b) { return a *= b; }
    friend Function operator/(Function a, Function const& b) { return a /= b; }
    friend Function operator*(Function a, Rational const& s);
    friend Function operator*(Rational const& s, Function a) { return std::move(a) * s; }
    friend bool operator==(Function const& f, Function const& g);
    friend bool operator!=(Function const& f, Function const& g) { return !(f == g); }

    Function inverse() const;
    Function pow(int e) const;
    // A - B y
    Function conjugate() const;
    // A^2 - B^2 f, an element of Q(x).
    RatFunc norm() const;

    struct Canonical {
        Poly p, q, d;
    };
    Canonical canonical() const;

    // Regular at every affine point of the completion other than
    // punctures, i.e. an element of O(X) (all points, not only rational).
    bool in_coordinate_ring() const;

private:
    Curve curve_;
    RatFunc a_, b_;
};

// The global derivation dual to the canonical regular 1-form:
// d/dt on a line, x' = y and y' = f'(x)/2 on y^2 = f(x).
class Derivation {
public:
    explicit Derivation(Curve c) : curve_(std::move(c)) {}
    Curve const& curve() const { return curve_; }
    Function of_coordinate() const;
    Function of_y() const;
    Function operator()(Function const& g) const;
    Function apply_n(Function g, int n) const;

private:
    Curve curve_;
};

Derivation distinguished_derivation(Curve const& c);

// Generators of O(X)^x modulo constants.
struct UnitGroupDesc {
    std::vector<Function> generators;
};
UnitGroupDesc units(Curve const& c);

// Algebra generators of O(X): t and 1/(t - a_i) on a line, x and y on an
// elliptic curve.
std::vector<Function> ring_generators(Curve const& c);

/* Local parameter z at a point of the completion, fixed per point class:
 *   line, finite a:      z = t - a        line, infinity:   t = 1/z
 *   elliptic, y0 != 0:   z = x - x0       elliptic, y0 = 0: z = y
 *   elliptic, infinity:  x = z^-2, y = z^-3 sqrt(1 + a z^4 + b z^6)
 * Each series is known to at least `work` terms past its leading one.
 */
struct LocalChart {
    Point point;
    LaurentSeries x, y, dx_dz;
};
LocalChart local_chart(Curve const& c, Point const& P, int work);

// Expansion of g in the chart (no adaptive precision).
LaurentSeries expand_in_chart(Function const& g, LocalChart const& chart, int work);

constexpr int valuation_infinity = INT_MAX;

// Order of vanishing of g at P (negative for poles); valuation_infinity
// for g = 0. P must lie on the completion of X.
int valuation(Function const& g, Point const& P);

// Laurent expansion of g at P in the fixed local parameter, carrying n
// coefficients from the leading one on (n >= 1).
LaurentSeries local_expansion(Function const& g, Point const& P, int n);

} // namespace connexion
