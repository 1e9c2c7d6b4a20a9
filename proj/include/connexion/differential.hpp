#pragma once

#include "connexion/divisor.hpp"

namespace connexion {

/* Rational 1-form g * dt (line) or g * dx (elliptic).
 *
 * The canonical regular form is dt, resp. dx/y; it pairs to 1 with the
 * distinguished derivation and has neither zeros nor poles on X.
 */
class Differential {
public:
    Differential(Function coefficient) : coeff_(std::move(coefficient)) {}

    static Differential zero(Curve const& c) { return Differential(Function::constant(c, 0)); }
    static Differential canonical_regular(Curve const& c);
    // h * (canonical regular form)
    static Differential from_pairing(Function const& h);
    // dg
    static Differential exact(Function const& g);

    Curve const& curve() const { return coeff_.curve(); }
    // Coefficient of dt / dx.
    Function const& coefficient() const { return coeff_; }
    bool is_zero() const { return coeff_.is_zero(); }

    Differential operator-() const { return Differential(-coeff_); }
    Differential& operator+=(Differential const& o);
    Differential& operator-=(Differential const& o);
    friend Differential operator+(Differential a, Differential const& b) { return a += b; }
    friend Differential operator-(Differential a, Differential const& b) { return a -= b; }
    friend Differential operator*(Function const& g, Differential const& w) { return Differential(g * w.coeff_); }
    friend Differential operator*(Rational const& s, Differential const& w) { return Differential(w.coeff_ * s); }
    friend bool operator==(Differential const& a, Differential const& b) { return a.coeff_ == b.coeff_; }
    friend bool operator!=(Differential const& a, Differential const& b) { return !(a == b); }

private:
    Function coeff_;
};

// <w, d>: g * d(t) resp. g * d(x).
Function pairing(Differential const& w, Derivation const& d);

// dg / g
Differential dlog(Function const& g);

// Expansion of the coefficient of dz at P (n terms from the leading one).
LaurentSeries local_form_expansion(Differential const& w, Point const& P, int n);

// Order of w at P in the local parameter (valuation_infinity for 0).
int form_order(Differential const& w, Point const& P);

// Coefficient of z^-1 dz at P, P on X or a puncture.
Rational residue(Differential const& w, Point const& P);

// True iff w has no pole at any point of X (poles at punctures allowed);
// decided exactly over all points, rational or not.
bool is_regular_on_X(Differential const& w);

// Rational abscissae of the poles of w on X; throws unsupported_error
// when some pole on X is not Q-rational.
std::vector<Point> poles_on_X(Differential const& w);

// sum_{P in X} res_P(w) P. Throws domain_error naming the offending point
// on a pole of order >= 2 or a non-integer residue on X.
Divisor res_map(Differential const& w);

struct ResidueOptions {
    // Mutation hook for the verification suite: flip the sign of every
    // residue taken at infinity.
    bool negate_at_infinity = false;
};

// Sum of residues over all points of the completion (0 for every w).
Rational total_residue_completion(Differential const& w, ResidueOptions const& opts = {});

} // namespace connexion
