#pragma once

#include "connexion/function.hpp"

#include <map>
#include <optional>
#include <vector>

namespace connexion {

/* Finitely supported integer combination of points.
 *
 * Divisors on X never carry punctures; `extend_divisor` is the one
 * producer of completion divisors, which do. Zero coefficients are never
 * stored.
 */
class Divisor {
public:
    Divisor() = default;
    Divisor(std::initializer_list<std::pair<Point const, int>> terms);

    static Divisor point(Point const& P, int n = 1);

    int coefficient(Point const& P) const;
    void add(Point const& P, int n);
    std::map<Point, int> const& terms() const { return terms_; }
    std::vector<Point> support() const;
    bool is_zero() const { return terms_.empty(); }
    long degree() const;
    // Positive and negative parts.
    Divisor positive_part() const;
    Divisor negative_part() const;

    Divisor operator-() const;
    Divisor& operator+=(Divisor const& o);
    Divisor& operator-=(Divisor const& o);
    friend Divisor operator+(Divisor a, Divisor const& b) { return a += b; }
    friend Divisor operator-(Divisor a, Divisor const& b) { return a -= b; }
    friend Divisor operator*(int k, Divisor const& d);
    friend bool operator==(Divisor const& a, Divisor const& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(Divisor const& a, Divisor const& b) { return !(a == b); }

private:
    std::map<Point, int> terms_;
};

// Throws input_error unless every support point lies on X.
void require_on_curve(Curve const& c, Divisor const& D);

// Divisor of zeros and poles of g on X (punctures excluded). Throws
// unsupported_error when g has a zero or pole at a non-rational point.
Divisor divisor_of(Function const& g);
// Same, on the whole completion (punctures included).
Divisor completion_divisor_of(Function const& g);

// Chord-tangent group law on an elliptic curve; the point at infinity is
// the identity O.
Point ell_add(Curve const& c, Point const& P, Point const& Q);
Point ell_neg(Curve const& c, Point const& P);
Point ell_mul(Curve const& c, long n, Point const& P);
// Order of P if it is a torsion point (order <= 12 over Q), else 0.
int torsion_order(Curve const& c, Point const& P);
// Sum of n_P [P] over the divisor.
Point divisor_sum(Curve const& c, Divisor const& D);

enum class Verdict { principal, not_principal, inconclusive };

struct PrincipalityCertificate {
    Verdict verdict = Verdict::inconclusive;
    std::optional<Function> witness;
    std::optional<Point> obstruction;
};

PrincipalityCertificate is_principal(Curve const& c, Divisor const& D);

// Normalized g with divisor_of(g) = D; throws domain_error when D is not
// principal. Lines: monic product of (t - a)^n over supp D. Elliptic:
// leading coefficient 1, terms ordered by pole order at infinity.
Function function_with_divisor(Curve const& c, Divisor const& D);

// Scales g so that its leading coefficient (as above) is 1.
Function normalize_leading(Function const& g);

} // namespace connexion
