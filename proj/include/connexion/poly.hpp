#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace connexion {

using Rational = mpq_class;
using Integer = mpz_class;

/* Dense univariate polynomial over Q, coefficients stored from the
 * constant term upwards. The zero polynomial has an empty coefficient
 * vector and degree -1.
 */
class Poly {
public:
    Poly() = default;
    Poly(Rational const& c);
    Poly(long c) : Poly(Rational(c)) {}
    explicit Poly(std::vector<Rational> coeffs);

    static Poly monomial(Rational const& c, int deg);
    static Poly x() { return monomial(1, 1); }
    // x - a
    static Poly linear(Rational const& a);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const;
    Rational coeff(int i) const;
    Rational const& lead() const;
    std::vector<Rational> const& coeffs() const { return c_; }

    Poly operator-() const;
    Poly& operator+=(Poly const& o);
    Poly& operator-=(Poly const& o);
    Poly& operator*=(Poly const& o);
    Poly& operator*=(Rational const& s);

    friend Poly operator+(Poly a, Poly const& b) { return a += b; }
    friend Poly operator-(Poly a, Poly const& b) { return a -= b; }
    friend Poly operator*(Poly const& a, Poly const& b);
    friend Poly operator*(Poly a, Rational const& s) { return a *= s; }
    friend Poly operator*(Rational const& s, Poly a) { return a *= s; }
    friend bool operator==(Poly const& a, Poly const& b) { return a.c_ == b.c_; }

    // Euclidean division; throws on division by zero.
    static std::pair<Poly, Poly> divmod(Poly const& a, Poly const& b);
    friend Poly operator/(Poly const& a, Poly const& b) { return divmod(a, b).first; }
    friend Poly operator%(Poly const& a, Poly const& b) { return divmod(a, b).second; }
    bool divides(Poly const& other) const;

    Rational eval(Rational const& x) const;
    Poly derivative() const;
    Poly monic() const;
    Poly pow(unsigned e) const;
    // p(x + a)
    Poly taylor_shift(Rational const& a) const;
    // p(q(x))
    Poly compose(Poly const& q) const;
    // Multiplicity of a as a root.
    int order_at(Rational const& a) const;

    // Lexicographic comparison on (degree, coefficients from the top);
    // only used to give containers a deterministic order.
    friend bool operator<(Poly const& a, Poly const& b);

private:
    void trim();
    std::vector<Rational> c_;
};

// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);
Poly lcm(Poly const& a, Poly const& b);
// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) monic.
struct ExtendedGcd {
    Poly g, s, t;
};
ExtendedGcd extended_gcd(Poly const& a, Poly const& b);

// Squarefree part (monic).
Poly squarefree_part(Poly const& p);

// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(Poly const& p);

// Roots with multiplicity when p splits into linear factors over Q,
// std::nullopt otherwise. Constants split trivially.
std::optional<std::vector<std::pair<Rational, int>>> split_over_q(Poly const& p);

// Exact square root in Q, if any.
std::optional<Rational> rational_sqrt(Rational const& q);

// Chinese remaindering: the unique r with deg r < deg(prod m_i) and
// r = r_i mod m_i, the moduli pairwise coprime.
Poly crt(std::vector<std::pair<Poly, Poly>> const& residues_and_moduli);

} // namespace connexion
