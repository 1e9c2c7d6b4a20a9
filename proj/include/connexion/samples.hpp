#pragma once

#include "connexion/dmodule.hpp"

#include <random>
#include <string>
#include <vector>

namespace connexion {

// A curve together with a few rational points of X to build samples on.
struct Instance {
    std::string name;
    Curve curve;
    std::vector<Point> points;
};

// E1: y^2 = x^3 - x, E2: y^2 = x^3 - 2, L1: A^1 - {0}, L2: A^1 - {0, 1}.
std::vector<Instance> bundled_instances();
Instance bundled_instance(std::string const& name);

/* Random objects whose zeros and poles are all rational, so that the
 * exact divisor machinery applies to them.
 *
 * Elliptic functions are products of vertical and chord/tangent lines
 * through the instance points (each has rational divisor); line
 * functions are products of linear factors.
 */
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi);
    Rational small_rational();
    // Nonzero function with rational support, numerator and denominator
    // built from at most max_factors factors each.
    Function function(Instance const& inst, int max_factors = 2);
    // Arbitrary element of K with small coefficients (support unknown).
    Function field_element(Instance const& inst);
    // Divisor on up to `points` instance points, |coefficients| <= max_coef.
    Divisor divisor(Instance const& inst, int points, int max_coef);
    // Form regular on X.
    Differential regular_form(Instance const& inst);
    // Form with simple poles and integer residues on X.
    Differential third_kind_form(Instance const& inst);
    DiffOperator op(Instance const& inst, int order);

    std::mt19937_64& engine() { return rng_; }

private:
    std::vector<Function> factor_pool(Instance const& inst);
    std::mt19937_64 rng_;
};

} // namespace connexion
