#include "connexion/periods.hpp"

#include "connexion/error.hpp"
#include "connexion/text.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

namespace connexion {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;
constexpr Complex I1{ 0, 1 };

std::vector<Complex> to_complex(Poly const& p)
{
    std::vector<Complex> out;
    for (auto const& c : p.coeffs())
        out.emplace_back(c.get_d(), 0);
    return out;
}

Complex horner(std::vector<Complex> const& p, Complex x)
{
    Complex acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

std::vector<Complex> numeric_roots(Poly const& p)
{
    if (p.degree() < 1)
        return {};
    std::vector<Complex> const pc = to_complex(p);
    if (p.degree() == 1)
        return { -pc[0] / pc[1] };
    Eigen::VectorXd coeffs(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i)
        coeffs[i] = pc[static_cast<size_t>(i)].real();
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
    std::vector<Complex> roots(solver.roots().begin(), solver.roots().end());
    // A few Newton steps against the rounded companion-matrix roots.
    std::vector<Complex> dp;
    for (size_t i = 1; i < pc.size(); ++i)
        dp.push_back(pc[i] * static_cast<double>(i));
    for (auto& r : roots)
        for (int k = 0; k < 3; ++k) {
            Complex const d = horner(dp, r);
            if (std::abs(d) == 0)
                break;
            r -= horner(pc, r) / d;
        }
    return roots;
}

// (p + q y) / d, or num/den on a line.
struct NumericFunction {
    std::vector<Complex> p, q, d;

    explicit NumericFunction(Function const& g)
    {
        if (g.curve().is_elliptic()) {
            auto const can = g.canonical();
            p = to_complex(can.p);
            q = to_complex(can.q);
            d = to_complex(can.d);
        } else {
            p = to_complex(g.a().num());
            d = to_complex(g.a().den());
        }
    }

    Complex operator()(Complex x, Complex y) const
    {
        Complex num = horner(p, x);
        if (!q.empty())
            num += horner(q, x) * y;
        return num / horner(d, x);
    }
};

Poly pole_polynomial(Differential const& w)
{
    auto const& g = w.coefficient();
    return g.curve().is_elliptic() ? g.canonical().d : g.a().den();
}

// Abscissae where the chart or the form may be singular.
std::vector<Complex> singular_abscissae(Curve const& c, Differential const& w)
{
    std::vector<Complex> s = numeric_roots(pole_polynomial(w));
    if (c.is_elliptic()) {
        auto const r = numeric_roots(c.cubic());
        s.insert(s.end(), r.begin(), r.end());
    } else {
        for (auto const& a : c.punctures())
            s.emplace_back(a.get_d(), 0);
    }
    return s;
}

struct Quadrature {
    Complex value;
    double error;
    int nodes;
};

// Trapezoid rule over [0, 2 pi) for a periodic integrand, doubling the
// node count until successive values agree to tol.
Quadrature trapezoid(std::function<Complex(double)> const& F, double tol)
{
    int n = 32;
    Complex sum = 0;
    for (int k = 0; k < n; ++k)
        sum += F(two_pi * k / n);
    Complex prev = sum * (two_pi / n);
    for (; n <= (1 << 20); n *= 2) {
        for (int k = 0; k < n; ++k)
            sum += F(two_pi * (2 * k + 1) / (2 * n));
        Complex const cur = sum * (two_pi / (2 * n));
        double const err = std::abs(cur - prev);
        if (!std::isfinite(err))
            throw domain_error("quadrature hit a singularity on the path");
        if (err <= tol && 2 * n >= 128)
            return { cur, err, 2 * n };
        prev = cur;
    }
    throw domain_error("quadrature did not reach the requested tolerance");
}

struct ChartValue {
    Complex x, y, dx_dz;
};

// Numeric version of the local parameter at P: the same charts as the
// exact expansions.
class NumericChart {
public:
    NumericChart(Curve c, Point P) : c_(std::move(c)), P_(std::move(P))
    {
        if (c_.is_elliptic()) {
            f_ = to_complex(c_.cubic());
            fp_ = to_complex(c_.cubic().derivative());
        }
    }

    ChartValue operator()(Complex z) const
    {
        if (!c_.is_elliptic()) {
            if (P_.is_infinity())
                return { 1.0 / z, 0, -1.0 / (z * z) };
            return { P_.x().get_d() + z, 0, 1 };
        }
        double const a = c_.a().get_d(), b = c_.b().get_d();
        if (P_.is_infinity()) {
            Complex const z2 = z * z;
            Complex const w = std::sqrt(1.0 + a * z2 * z2 + b * z2 * z2 * z2);
            return { 1.0 / z2, w / (z2 * z), -2.0 / (z2 * z) };
        }
        double const x0 = P_.x().get_d(), y0 = P_.y().get_d();
        if (P_.y() != 0) {
            Complex const x = x0 + z;
            return { x, y0 * std::sqrt(horner(f_, x) / (y0 * y0)), 1 };
        }
        // z = y; x is the root of f(x) = z^2 near x0.
        Complex x = x0 + z * z / horner(fp_, Complex(x0, 0));
        for (int k = 0; k < 30; ++k) {
            Complex const step = (horner(f_, x) - z * z) / horner(fp_, x);
            x -= step;
            if (std::abs(step) < 1e-17 * (1 + std::abs(x)))
                break;
        }
        return { x, z, 2.0 * z / horner(fp_, x) };
    }

private:
    Curve c_;
    Point P_;
    std::vector<Complex> f_, fp_;
};

Complex integrand_loop(NumericFunction const& g, NumericChart const& chart, double r, double theta)
{
    Complex const z = std::polar(r, theta);
    auto const v = chart(z);
    return g(v.x, v.y) * v.dx_dz * (I1 * z);
}

Complex ellipse_y(Cycle const& cy, Complex x)
{
    Complex const u = x - cy.center;
    Complex const e = cy.semi_axis;
    Complex const third = cy.third_root;
    return static_cast<double>(cy.sheet) * u * std::sqrt(1.0 - e * e / (u * u))
        * std::sqrt((x - third) / (cy.center - third)) * std::sqrt(cy.center - third);
}

Complex integrand_branch(NumericFunction const& g, Cycle const& cy, double theta)
{
    Complex const s = cy.rho + I1 * theta;
    Complex const x = cy.center + cy.semi_axis * std::cosh(s);
    Complex const dx = cy.semi_axis * std::sinh(s) * I1;
    return g(x, ellipse_y(cy, x)) * dx;
}

Quadrature integrate(Differential const& w, Cycle const& cy, double tol)
{
    Curve const& c = w.curve();
    if (w.is_zero())
        return { 0, 0, 0 };
    NumericFunction const g(w.coefficient());
    if (cy.kind == Cycle::branch)
        return trapezoid([&](double t) { return integrand_branch(g, cy, t); }, tol);
    NumericChart const chart(c, cy.anchor);
    return trapezoid([&](double t) { return integrand_loop(g, chart, cy.radius, t); }, tol);
}

double min_distance(std::vector<Complex> const& s, Complex x0)
{
    double d = 1e300;
    for (auto const& v : s)
        if (std::abs(v - x0) > 1e-9)
            d = std::min(d, std::abs(v - x0));
    return d;
}

double max_modulus(std::vector<Complex> const& s)
{
    double m = 0;
    for (auto const& v : s)
        m = std::max(m, std::abs(v));
    return m;
}

} // namespace

Cycle loop_cycle(Curve const& c, Point const& P, Differential const& w)
{
    if (!c.on_completion(P))
        throw domain_error("loop around " + format(c, P) + ": point not on the curve");
    if (w.curve() != c)
        throw domain_error("loop_cycle: form on another curve");
    auto const sing = singular_abscissae(c, w);
    Cycle cy;
    cy.kind = Cycle::loop;
    cy.name = "loop " + format(c, P);
    cy.anchor = P;
    NumericChart const chart(c, P);
    if (P.is_infinity()) {
        double const R = 2 * max_modulus(sing) + 2;
        double r = 1 / (c.is_elliptic() ? std::sqrt(R) : R);
        if (c.is_elliptic()) {
            double const a = std::abs(c.a().get_d()), b = std::abs(c.b().get_d());
            while (a * std::pow(r, 4) + b * std::pow(r, 6) > 0.5)
                r /= 2;
        }
        cy.radius = r;
        return cy;
    }
    Complex const x0(P.x().get_d(), 0);
    double const delta = std::min(min_distance(sing, x0), 1e6);
    double r = c.is_elliptic() && P.y() == 0
        ? std::sqrt(0.5 * delta * std::abs(c.cubic().derivative().eval(P.x()).get_d()))
        : 0.5 * delta;
    r = std::min(r, 1.0);
    // Shrink until the circle stays well inside the clearance disc and
    // the principal square roots of the chart stay continuous.
    for (int attempt = 0; attempt < 60; ++attempt, r /= 2) {
        bool ok = true;
        for (int k = 0; k < 64 && ok; ++k) {
            Complex const z = std::polar(r, two_pi * k / 64);
            auto const v = chart(z);
            if (std::abs(v.x - x0) > 0.5 * delta)
                ok = false;
            if (c.is_elliptic() && P.y() != 0) {
                double const y0 = P.y().get_d();
                Complex const ratio = horner(to_complex(c.cubic()), v.x) / (y0 * y0);
                if (std::abs(ratio - 1.0) > 0.5)
                    ok = false;
            }
        }
        if (ok) {
            cy.radius = r;
            return cy;
        }
    }
    throw domain_error("no clear loop radius around " + format(c, P));
}

namespace {

struct EllipseChoice {
    double rho;
    double score;
};

// Elliptic radius of x in the confocal coordinates of the ellipse family
// with the given center and semi-axis.
double elliptic_radius(Complex x, Complex m, Complex e)
{
    return std::acosh((x - m) / e).real();
}

Cycle branch_cycle(std::string name, Complex e1, Complex e2, Complex third, std::vector<Complex> const& poles)
{
    Cycle cy;
    cy.kind = Cycle::branch;
    cy.name = std::move(name);
    cy.center = (e1 + e2) / 2.0;
    cy.semi_axis = (e1 - e2) / 2.0;
    cy.third_root = third;
    double const rho_third = elliptic_radius(third, cy.center, cy.semi_axis);
    std::optional<EllipseChoice> best;
    for (double rho : { 1.2, 0.9, 0.7, 0.5, 0.35, 0.25, 0.18, 0.12, 0.08, 0.05, 0.03 }) {
        if (rho > 0.75 * rho_third)
            continue;
        double score = std::min(rho, rho_third - rho);
        for (auto const& p : poles) {
            double const rp = elliptic_radius(p, cy.center, cy.semi_axis);
            score = std::min(score, std::abs(rp - rho));
        }
        if (!best || score > best->score + 1e-12)
            best = EllipseChoice{ rho, score };
    }
    if (!best || best->score < 1e-4)
        throw domain_error("cycle " + cy.name + " cannot keep clear of the poles of the form");
    cy.rho = best->rho;
    return cy;
}

} // namespace

std::vector<Cycle> generator_cycles(Curve const& c, Differential const& w)
{
    if (!c.is_elliptic())
        throw domain_error("generator cycles exist only on elliptic curves");
    auto roots = numeric_roots(c.cubic());
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (std::abs(a.real() - b.real()) > 1e-12)
            return a.real() < b.real();
        return a.imag() < b.imag();
    });
    auto poles = numeric_roots(pole_polynomial(w));
    Cycle A = branch_cycle("A", roots[0], roots[1], roots[2], poles);
    Cycle B = branch_cycle("B", roots[1], roots[2], roots[0], poles);
    Differential const hol = Differential::canonical_regular(c);
    Complex const oa = integrate(hol, A, 1e-6).value;
    if (oa.real() < -1e-9 * std::abs(oa) || (std::abs(oa.real()) <= 1e-9 * std::abs(oa) && oa.imag() < 0))
        A.sheet = -1;
    Complex const oa2 = static_cast<double>(A.sheet) * oa;
    Complex const ob = integrate(hol, B, 1e-6).value;
    if ((ob / oa2).imag() < 0)
        B.sheet = -1;
    return { A, B };
}

PeriodData holomorphic_periods(Curve const& c, double tol)
{
    if (!c.is_elliptic())
        throw domain_error("holomorphic periods are computed for elliptic curves only");
    if (!(tol > 0))
        throw domain_error("tolerance must be positive");
    auto const hol = Differential::canonical_regular(c);
    return third_kind_periods(hol, generator_cycles(c, hol), tol);
}

CyclePeriod period(NormalizedForm const& w, Cycle const& cycle, double tol)
{
    if (!(tol > 0))
        throw domain_error("tolerance must be positive");
    Curve const& c = w.exact.curve();
    bool const corrected = w.c != Complex(0, 0);
    double const part = corrected ? tol / 2 : tol;
    auto q = integrate(w.exact, cycle, part);
    CyclePeriod out{ cycle.name, q.value, q.error, q.nodes };
    if (corrected) {
        auto const h = integrate(Differential::canonical_regular(c), cycle, part / std::max(1.0, std::abs(w.c)));
        out.value -= w.c * h.value;
        out.error += std::abs(w.c) * h.error;
        out.nodes = std::max(out.nodes, h.nodes);
    }
    return out;
}

PeriodData third_kind_periods(Differential const& w, std::vector<Cycle> const& cycles, double tol)
{
    PeriodData out;
    out.tol = tol;
    for (auto const& cy : cycles)
        out.entries.push_back(period(NormalizedForm{ w, 0 }, cy, tol));
    return out;
}

Normalization normalize_imaginary(Differential const& w, double tol)
{
    Curve const& c = w.curve();
    Normalization out{ NormalizedForm{ w, 0 }, {}, 1 };
    out.periods.tol = tol;
    if (!c.is_elliptic()) {
        // Genus 0: every cycle is a sum of puncture loops, whose periods
        // are 2 pi i times integer residues already.
        for (auto const& P : c.completion_punctures())
            out.periods.entries.push_back(period(out.form, loop_cycle(c, P, w), tol));
        return out;
    }
    auto const cycles = generator_cycles(c, w);
    auto const hol = Differential::canonical_regular(c);
    double const sub = tol / 8;
    Complex pi[2], om[2];
    for (int j = 0; j < 2; ++j) {
        pi[j] = integrate(w, cycles[static_cast<size_t>(j)], sub).value;
        om[j] = integrate(hol, cycles[static_cast<size_t>(j)], sub).value;
    }
    // Re(c om_j) = Re(c) Re(om_j) - Im(c) Im(om_j) = Re(pi_j)
    double const m00 = om[0].real(), m01 = -om[0].imag(), m10 = om[1].real(), m11 = -om[1].imag();
    double const det = m00 * m11 - m01 * m10;
    double const norm = std::sqrt(m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11);
    if (std::abs(det) < 1e-14 * norm * norm)
        throw domain_error("normalization system is singular");
    out.condition = norm * norm / std::abs(det);
    double const cr = (pi[0].real() * m11 - m01 * pi[1].real()) / det;
    double const ci = (m00 * pi[1].real() - m10 * pi[0].real()) / det;
    out.form.c = Complex(cr, ci);
    for (auto const& cy : cycles)
        out.periods.entries.push_back(period(out.form, cy, tol));
    return out;
}

CharacterValue unit_character(NormalizedForm const& w, Cycle const& cycle, double tol)
{
    auto const p = period(w, cycle, tol);
    Complex const v = std::exp(p.value);
    return { v, std::abs(v) * p.error };
}

Polar polar_decompose(Complex v)
{
    if (v == Complex(0, 0))
        throw domain_error("polar decomposition of zero");
    double theta = std::arg(v);
    if (theta < 0)
        theta += two_pi;
    if (theta >= two_pi)
        theta -= two_pi;
    return { std::log(std::abs(v)), theta };
}

} // namespace connexion
