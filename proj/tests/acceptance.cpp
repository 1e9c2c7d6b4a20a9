// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include "connexion/connection.hpp"
#include "connexion/dmodule.hpp"
#include "connexion/periods.hpp"
#include "connexion/splitting.hpp"
#include "connexion/text.hpp"

#include "gen.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

using namespace connexion;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, std::string const& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

Curve const E1 = Curve::elliptic(-1, 0);
Curve const L1 = Curve::punctured_line({ 0 });
Point const O = Point::affine(0, 0);

std::string fmt(char const* f, double v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome c1_construction()
{
    Outcome o;
    Divisor const D = Divisor::point(O);
    auto const cf = connection_form(E1, D);
    o.require(res_map(cf.form) == D, "res_map(omega) != (0,0)");
    for (auto const& P : poles_on_X(cf.form))
        o.require(form_order(cf.form, P) == -1, "pole of order > 1 at " + format(E1, P));
    for (int n = 1; n <= 3; ++n) {
        auto const v = verify_connection_operator(cf.form, D, n);
        o.require(v.ok, "verify_connection_operator failed at n = " + std::to_string(n) + ": " + v.failure);
    }
    o.detail = o.ok ? "omega = " + format(cf.form) + ", n = 1..3" : o.detail;
    return o;
}

Outcome c2_residue_divisor()
{
    Outcome o;
    gen::Rng r(2);
    int n = 0;
    for (auto const& name : { "E1", "L1" }) {
        Instance const inst = bundled_instance(name);
        for (int i = 0; i < 100; ++i, ++n) {
            Function const g = gen::rational_divisor_function(r, inst);
            o.require(gen::degree_bound(g) <= 4, "generator exceeded degree 4");
            o.require(res_map(dlog(g)) == divisor_of(g), "mismatch for g = " + format(g));
        }
    }
    if (o.ok)
        o.detail = std::to_string(n) + " functions on E1 and L1";
    return o;
}

Outcome c3_kernel_law()
{
    Outcome o;
    gen::Rng r(3);
    int n = 0, zero = 0;
    for (auto const& inst : bundled_instances()) {
        auto const ctx = build_splitting(inst.curve, inst.points, 8);
        Sampler s(r.eng());
        for (int i = 0; i < 30; ++i, ++n) {
            Divisor const D = i % 4 == 0 ? Divisor{} : s.divisor(inst, 4, 3);
            zero += D.is_zero();
            Differential const w = split(ctx, D) + s.regular_form(inst);
            Divisor const back = res_map(w);
            o.require(back == D, "res_map did not recover " + format(inst.curve, D));
            o.require(back.is_zero() == is_regular_on_X(w), "kernel law broken for " + format(w));
        }
    }
    if (o.ok)
        o.detail = std::to_string(n) + " forms (" + std::to_string(zero) + " with D = 0)";
    return o;
}

Outcome c4_splitting()
{
    Outcome o;
    gen::Rng r(4);
    auto const ce = build_splitting(E1, { O }, 16);
    auto const x = Function::coordinate(E1);
    o.require(split(ce, Divisor::point(O, 2)) == dlog(x), "split(2(0,0)) != dlog x");
    Differential const half = split(ce, Divisor::point(O));
    o.require(half == Differential(x.inverse() * Rational(1, 2)), "split((0,0)) != dx/(2x)");
    o.require(residue(half, O) == 1, "residue of split((0,0)) is not 1");
    Point const a = Point::affine(1);
    auto const cl = build_splitting(L1, { a }, 16);
    int pairs = 0;
    for (auto const& [c, P] : { std::pair{ E1, O }, std::pair{ L1, a } }) {
        auto const& ctx = c == E1 ? ce : cl;
        for (int i = 0; i < 50; ++i, ++pairs) {
            Divisor const A = Divisor::point(P, r.range(-5, 5)), B = Divisor::point(P, r.range(-5, 5));
            o.require(split(ctx, A + B) == split(ctx, A) + split(ctx, B), "additivity failed");
            o.require(project(make_class(split(ctx, A))) == PicClass(c, A), "descent failed");
        }
    }
    if (o.ok)
        o.detail = std::to_string(pairs) + " pairs; split((0,0)) = " + format(half);
    return o;
}

Outcome c5_lattice()
{
    Outcome o;
    std::vector<Point> const T = { O, Point::affine(1, 0), Point::affine(-1, 0) };
    auto const lat = relation_lattice(E1, T, 16);
    // Exhaustive over (Z/2)^3 through the group law, plus 2 e_i.
    IntegerMatrix rows;
    for (int m = 0; m < 8; ++m) {
        std::vector<int> v = { m & 1, (m >> 1) & 1, (m >> 2) & 1 };
        Point acc = Point::infinity();
        for (size_t i = 0; i < 3; ++i)
            if (v[i])
                acc = ell_add(E1, acc, T[i]);
        if (acc.is_infinity())
            rows.push_back({ v[0], v[1], v[2] });
    }
    for (int i = 0; i < 3; ++i) {
        std::vector<Integer> e(3, 0);
        e[static_cast<size_t>(i)] = 2;
        rows.push_back(e);
    }
    auto const want = oracle::hnf(rows), got = oracle::hnf(lat.basis);
    o.require(got == want, "HNF mismatch");
    o.require(lat.verdict == LatticeVerdict::complete, "verdict not complete");
    if (o.ok) {
        std::ostringstream ss;
        for (auto const& row : got) {
            ss << "(";
            for (size_t j = 0; j < row.size(); ++j)
                ss << (j ? "," : "") << row[j];
            ss << ")";
        }
        o.detail = "HNF " + ss.str();
    }
    return o;
}

Outcome c6_gauge()
{
    Outcome o;
    gen::Rng r(6);
    int n = 0, triples = 0;
    for (auto const& inst : bundled_instances()) {
        Sampler s(r.eng());
        for (int i = 0; i < 25; ++i, ++n) {
            auto const c = make_class(s.third_kind_form(inst));
            Function const f = gen::rational_divisor_function(r, inst);
            auto const g = gauge(c, f);
            o.require(equals(c, g).equal, "equals(c, gauge(c, f)) false");
            if (i % 5 == 0) {
                // related chain plus an unrelated third
                auto const h = gauge(g, gen::rational_divisor_function(r, inst));
                auto const u = make_class(s.third_kind_form(inst));
                for (auto const& t : { h, u }) {
                    ++triples;
                    bool const ab = equals(c, g).equal, bc = equals(g, t).equal, ac = equals(c, t).equal;
                    o.require(!(ab && bc) || ac, "transitivity failed");
                }
            }
        }
    }
    auto const t = Function::coordinate(L1);
    o.require(equals(embed_regular(dlog(t)), embed_regular(Differential::zero(L1))).equal,
        "embed_regular(dt/t) != embed_regular(0) on L1");
    if (o.ok)
        o.detail = std::to_string(n) + " gauge pairs, " + std::to_string(triples) + " triples, dt/t ~ 0 on L1";
    return o;
}

Outcome c7_residue_theorem()
{
    Outcome o;
    gen::Rng r(7);
    int n = 0;
    for (auto const& inst : bundled_instances()) {
        Sampler s(r.eng());
        for (int i = 0; i < 50; ++i, ++n) {
            Differential const w = s.third_kind_form(inst);
            o.require(total_residue_completion(w) == 0, "nonzero total residue for " + format(w));
        }
    }
    if (o.ok)
        o.detail = std::to_string(n) + " forms on E1, E2, L1, L2";
    return o;
}

Outcome c8_periods()
{
    Outcome o;
    auto const pd = holomorphic_periods(E1, 1e-10);
    double const dev = std::abs(pd.entries.at(0).value - Complex(oracle::e1_real_period, 0));
    o.require(dev < 1e-7, "real period off by " + fmt("%.3g", dev));
    gen::Rng r(8);
    double worst = 0;
    int n = 0;
    for (auto const& inst : bundled_instances()) {
        Sampler s(r.eng());
        for (int i = 0; i < 5; ++i, ++n) {
            Differential const w = s.third_kind_form(inst);
            Point const P = inst.points[static_cast<size_t>(r.range(0, static_cast<int>(inst.points.size()) - 1))];
            auto const p = period(NormalizedForm{ w, { 0, 0 } }, loop_cycle(inst.curve, P, w), 1e-10);
            Complex const want(0, 2 * std::numbers::pi * residue(w, P).get_d());
            worst = std::max(worst, std::abs(p.value - want));
        }
    }
    o.require(worst < 1e-7, "loop period off by " + fmt("%.3g", worst));
    if (o.ok)
        o.detail = "|A - oracle| = " + fmt("%.1e", dev) + ", " + std::to_string(n) + " loops, worst " + fmt("%.1e", worst);
    return o;
}

Outcome c9_normalization()
{
    Outcome o;
    auto const n = normalize_imaginary(dlog(Function::coordinate(E1)), 1e-11);
    double worst_re = 0, worst_mod = 0, worst_lambda = 0;
    int cycles = 0;
    for (auto const& cyc : generator_cycles(E1, n.form.exact)) {
        ++cycles;
        worst_re = std::max(worst_re, std::abs(period(n.form, cyc, 1e-11).value.real()));
        auto const ch = unit_character(n.form, cyc, 1e-11);
        worst_mod = std::max(worst_mod, std::abs(std::abs(ch.value) - 1));
        worst_lambda = std::max(worst_lambda, std::abs(polar_decompose(ch.value).lambda));
    }
    o.require(cycles == 2, "expected two generator cycles");
    o.require(worst_re < 1e-8, "real part " + fmt("%.3g", worst_re));
    o.require(worst_mod < 1e-8, "modulus off by " + fmt("%.3g", worst_mod));
    o.require(worst_lambda < 1e-8, "lambda " + fmt("%.3g", worst_lambda));
    if (o.ok)
        o.detail = "max |Re| " + fmt("%.1e", worst_re) + ", max ||chi| - 1| " + fmt("%.1e", worst_mod);
    return o;
}

Outcome c10_operators()
{
    Outcome o;
    auto const cf = connection_form(E1, Divisor::point(O));
    auto const d = DiffOperator::derivation_power(E1, 1);
    DiffOperator rhs(E1);
    for (size_t i = 0; i < cf.system.alpha.size(); ++i)
        rhs = op_add(rhs, op_compose(op_compose(DiffOperator::multiplication(cf.system.alpha[i]), d),
                              DiffOperator::multiplication(cf.system.beta[i])));
    o.require(phi(cf.form, d) == rhs, "phi(d) != sum alpha_i d beta_i");
    gen::Rng r(10);
    Sampler s(r.eng());
    Instance const inst = bundled_instance("E1");
    int pairs = 0;
    for (; pairs < 50; ++pairs) {
        auto const a = s.op(inst, r.range(0, 2)), b = s.op(inst, r.range(0, 2));
        o.require(phi(cf.form, a * b) == phi(cf.form, a) * phi(cf.form, b), "phi not multiplicative");
    }
    if (o.ok)
        o.detail = "phi(d) = " + format(rhs) + "; " + std::to_string(pairs) + " pairs";
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        char const* name;
        Outcome (*run)();
        double budget; // seconds, 0 when none is stated
    };
    Criterion const all[] = {
        { "connection form on E1, D = (0,0)", c1_construction, 5 },
        { "res_map(dlog g) = divisor_of(g)", c2_residue_divisor, 30 },
        { "kernel law of the residue sequence", c3_kernel_law, 0 },
        { "splitting laws", c4_splitting, 10 },
        { "relation lattice vs brute force", c5_lattice, 0 },
        { "gauge and quotient laws", c6_gauge, 0 },
        { "residue theorem", c7_residue_theorem, 0 },
        { "numeric periods", c8_periods, 60 },
        { "imaginary normalization", c9_normalization, 0 },
        { "operator algebra", c10_operators, 0 },
    };
    int failed = 0, k = 0;
    for (auto const& c : all) {
        ++k;
        auto const t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (std::exception const& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && c.budget > 0 && secs > c.budget) {
            o.ok = false;
            o.detail = "over time budget of " + fmt("%.0f s", c.budget);
        }
        failed += !o.ok;
        std::printf("%s %2d %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", k, c.name, o.detail.c_str(), secs);
    }
    std::printf("%d/%d criteria passed\n", k - failed, k);
    return failed ? 1 : 0;
}
