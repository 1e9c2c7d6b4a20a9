#pragma once

#include "connexion/ideal.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace connexion {

/* sum g_i d^i with left coefficients g_i in K, d the distinguished
 * derivation. Trailing zero coefficients are dropped; the zero operator
 * has no coefficients and order -1.
 */
class DiffOperator {
public:
    explicit DiffOperator(Curve c) : curve_(std::move(c)) {}
    DiffOperator(Curve c, std::vector<Function> coeffs);
    // Multiplication by g.
    static DiffOperator multiplication(Function const& g);
    // d^n
    static DiffOperator derivation_power(Curve const& c, int n);

    Curve const& curve() const { return curve_; }
    int order() const { return static_cast<int>(g_.size()) - 1; }
    bool is_zero() const { return g_.empty(); }
    std::vector<Function> const& coefficients() const { return g_; }
    Function coefficient(int i) const;

    DiffOperator operator-() const;
    friend DiffOperator operator+(DiffOperator const& a, DiffOperator const& b);
    friend DiffOperator operator-(DiffOperator const& a, DiffOperator const& b);
    // Composition a o b.
    friend DiffOperator operator*(DiffOperator const& a, DiffOperator const& b);
    friend bool operator==(DiffOperator const& a, DiffOperator const& b);
    friend bool operator!=(DiffOperator const& a, DiffOperator const& b) { return !(a == b); }

    // theta(g)
    Function apply(Function const& g) const;

private:
    void trim();
    Curve curve_;
    std::vector<Function> g_;
};

DiffOperator op_compose(DiffOperator const& a, DiffOperator const& b);
DiffOperator op_add(DiffOperator const& a, DiffOperator const& b);
DiffOperator commutator(DiffOperator const& a, DiffOperator const& b);

// The automorphism of D(K) fixing K with d -> d + <w, d>.
DiffOperator phi(Differential const& w, DiffOperator const& theta);

// theta(I) contained in I. Checks theta on the generators of I and,
// recursively, the commutators [theta, r] for the algebra generators r
// of O(X); the two together are equivalent to preservation.
bool preserves(DiffOperator const& theta, FractionalIdeal const& I);

struct ConnectionCheck {
    bool ok = false;
    int order_bound = 0;
    // Description of the first operator that failed, if any.
    std::string failure;
};

// phi_w maps the generators of D(X) up to order n into D(I_D), and
// phi_{-w} maps the generators g d^i h (g in I_D, h in I_{-D}, i <= n)
// of D(I_D) into D(X).
ConnectionCheck verify_connection_operator(Differential const& w, Divisor const& D, int n);

// Polynomial in d (or the symbol "∂") with function coefficients, e.g.
// "x*d^2 + y/x*d + 1".
DiffOperator parse_operator(Curve const& c, std::string_view s);
std::string format(DiffOperator const& op);

} // namespace connexion
