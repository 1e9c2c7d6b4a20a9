#pragma once

#include "connexion/differential.hpp"

#include <complex>
#include <string>
#include <vector>

namespace connexion {

using Complex = std::complex<double>;

/* Closed path on the curve.
 *
 * branch: x = m + e cosh(rho + i theta), an ellipse with foci at two
 *         roots of f (elliptic curves only), lifted to the sheet where
 *         y = sheet * (x - m) sqrt(1 - e^2/(x - m)^2) sqrt(x - r3); r3
 *         is the remaining root.
 * loop:   a circle |z| = radius in the local parameter at `anchor`,
 *         counterclockwise.
 */
struct Cycle {
    enum Kind { branch, loop } kind = loop;
    std::string name;
    // branch
    Complex center, semi_axis, third_root;
    double rho = 0;
    int sheet = 1;
    // loop
    Point anchor;
    double radius = 0;
};

struct CyclePeriod {
    std::string cycle;
    Complex value;
    double error = 0;
    int nodes = 0;
};

struct PeriodData {
    std::vector<CyclePeriod> entries;
    double tol = 0;
};

// A form minus a numeric multiple of the canonical regular form:
// exact - c * dx/y.
struct NormalizedForm {
    Differential exact;
    Complex c{ 0, 0 };
};

// The two generator cycles A, B of an elliptic curve, oriented so that
// Re(Omega_A) > 0 and Im(Omega_B / Omega_A) > 0, kept clear of the poles
// of w.
std::vector<Cycle> generator_cycles(Curve const& c, Differential const& w);
// Small loop around P (a point of X or a puncture) avoiding the other
// poles of w.
Cycle loop_cycle(Curve const& c, Point const& P, Differential const& w);

// Periods of dx/y over the generator cycles.
PeriodData holomorphic_periods(Curve const& c, double tol);
PeriodData third_kind_periods(Differential const& w, std::vector<Cycle> const& cycles, double tol);
CyclePeriod period(NormalizedForm const& w, Cycle const& cycle, double tol);

struct Normalization {
    NormalizedForm form;
    // Periods of the normalized form over the generator cycles.
    PeriodData periods;
    double condition = 0;
};

// Chooses c with Re(Pi_j(w) - c Omega_j) = 0 on both generator cycles;
// on a line c = 0.
Normalization normalize_imaginary(Differential const& w, double tol);

struct CharacterValue {
    Complex value;
    double error = 0;
};
// exp of the period.
CharacterValue unit_character(NormalizedForm const& w, Cycle const& cycle, double tol);

struct Polar {
    double lambda = 0, theta = 0;
};
// v = exp(lambda + i theta), theta in [0, 2 pi).
Polar polar_decompose(Complex v);

} // namespace connexion
