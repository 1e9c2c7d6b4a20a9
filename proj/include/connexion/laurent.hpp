#pragma once

#include "connexion/poly.hpp"

#include <climits>
#include <string>
#include <vector>

namespace connexion {

/* Truncated Laurent series  sum_{k >= val} c_k z^k + O(z^prec)  over Q.
 *
 * Coefficients are known exactly for every exponent below `precision()`.
 * A series with no known nonzero coefficient is "zero to precision": its
 * valuation is reported equal to its precision and `coeffs()` is empty.
 * `exact` precision means the series is a Laurent polynomial.
 */
class LaurentSeries {
public:
    static constexpr int exact = INT_MAX / 4;

    LaurentSeries() : val_(exact), prec_(exact) {}
    LaurentSeries(int val, std::vector<Rational> coeffs, int prec);

    static LaurentSeries constant(Rational const& c, int prec = exact);
    // z^k exactly.
    static LaurentSeries monomial(Rational const& c, int k);
    // p(z) exactly.
    static LaurentSeries from_poly(Poly const& p);

    int valuation() const { return val_; }
    int precision() const { return prec_; }
    // Number of known coefficients from the leading one on.
    int relative_precision() const;
    bool is_exact() const { return prec_ >= exact / 2; }
    bool is_zero_to_precision() const { return c_.empty(); }
    std::vector<Rational> const& coeffs() const { return c_; }
    Rational coeff(int k) const;
    Rational const& leading() const { return c_.front(); }

    LaurentSeries operator-() const;
    friend LaurentSeries operator+(LaurentSeries const& a, LaurentSeries const& b);
    friend LaurentSeries operator-(LaurentSeries const& a, LaurentSeries const& b) { return a + (-b); }
    friend LaurentSeries operator*(LaurentSeries const& a, LaurentSeries const& b);
    friend LaurentSeries operator*(LaurentSeries const& a, Rational const& s);

    // 1/a with relative precision `rel` when a is exact; otherwise the
    // relative precision of a is inherited.
    LaurentSeries inverse(int rel) const;
    LaurentSeries divide(LaurentSeries const& b, int rel) const { return *this * b.inverse(rel); }
    LaurentSeries derivative() const;
    LaurentSeries truncated(int prec) const;
    // p evaluated at this series.
    LaurentSeries compose_poly(Poly const& p) const;

    // Two series agree on every coefficient known to both.
    bool agrees_with(LaurentSeries const& o) const;

    // e.g. "2*z^-1 + 1 + O(z)"
    std::string to_string(std::string const& var = "z") const;

private:
    void normalize();

    int val_;
    std::vector<Rational> c_;
    int prec_;
};

// Power series sqrt(F) with F(0) a nonzero square of `root0`, to absolute
// precision n.
LaurentSeries series_sqrt(LaurentSeries const& F, Rational const& root0, int n);

} // namespace connexion
