#include "connexion/verify.hpp"

#include "connexion/connection.hpp"
#include "connexion/error.hpp"
#include "connexion/periods.hpp"
#include "connexion/samples.hpp"
#include "connexion/splitting.hpp"
#include "connexion/text.hpp"

#include "json.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace connexion {

std::string VerifyReport::to_json() const
{
    nlohmann::ordered_json j;
    j["suite"] = "connexion";
    j["passed"] = passed();
    j["checks"] = checks;
    auto v = nlohmann::ordered_json::array();
    for (auto const& x : violations)
        v.push_back({ { "invariant", x.invariant }, { "instance", x.instance }, { "detail", x.detail } });
    j["violations"] = v;
    j["warnings"] = warnings;
    return j.dump(2);
}

namespace {

class Suite {
public:
    Suite(VerifyOptions const& o) : opts(o), rng(o.seed) {}

    // Runs one check; exceptions count as violations of that invariant.
    void check(std::string const& invariant, Instance const& inst, std::function<std::string()> const& body)
    {
        ++report.checks;
        try {
            auto const why = body();
            if (!why.empty())
                report.violations.push_back({ invariant, inst.name, why });
        } catch (std::exception const& e) {
            report.violations.push_back({ invariant, inst.name, std::string("exception: ") + e.what() });
        }
    }

    VerifyOptions opts;
    Sampler rng;
    VerifyReport report;
};

void divisor_suite(Suite& s, Instance const& inst)
{
    Curve const& c = inst.curve;
    for (int i = 0; i < s.opts.samples; ++i) {
        auto const g = s.rng.function(inst);
        auto const h = s.rng.function(inst);
        s.check("divisor_of_multiplicative", inst, [&] {
            if (divisor_of(g * h) != divisor_of(g) + divisor_of(h))
                return "div(gh) != div g + div h for g = " + format(g) + ", h = " + format(h);
            return std::string();
        });
        s.check("completion_degree_zero", inst, [&] {
            if (completion_divisor_of(g).degree() != 0)
                return "degree of the completed divisor of " + format(g) + " is not 0";
            return std::string();
        });
        s.check("res_map_dlog", inst, [&] {
            if (res_map(dlog(g)) != divisor_of(g))
                return "res_map(dlog g) != div g for g = " + format(g);
            return std::string();
        });
        s.check("witness_roundtrip", inst, [&] {
            auto const D = divisor_of(g);
            auto const f = function_with_divisor(c, D);
            if (divisor_of(f) != D)
                return "function_with_divisor(" + format(c, D) + ") has the wrong divisor";
            return std::string();
        });
    }
}

void residue_suite(Suite& s, Instance const& inst)
{
    ResidueOptions ro;
    ro.negate_at_infinity = s.opts.inject_infinity_sign_flip;
    for (int i = 0; i < s.opts.samples; ++i) {
        auto const w = s.rng.third_kind_form(inst);
        s.check("total_residue_completion", inst, [&] {
            auto const t = total_residue_completion(w, ro);
            if (t != 0)
                return "sum of residues of " + format(w) + " is " + format(t);
            return std::string();
        });
        s.check("kernel_of_res", inst, [&] {
            bool const reg = is_regular_on_X(w);
            bool const zero = res_map(w).is_zero();
            if (reg != zero)
                return "res_map = 0 and regularity disagree for " + format(w);
            return std::string();
        });
    }
}

void connection_suite(Suite& s, Instance const& inst)
{
    Curve const& c = inst.curve;
    for (int i = 0; i < s.opts.samples / 2; ++i) {
        auto const D = s.rng.divisor(inst, 2, 2);
        s.check("connection_form_residues", inst, [&] {
            auto const cf = connection_form(c, D);
            Function sum = Function::constant(c, 0);
            for (size_t k = 0; k < cf.system.alpha.size(); ++k)
                sum += cf.system.alpha[k] * cf.system.beta[k];
            if (sum != Function::constant(c, 1))
                return "Bezout system for " + format(c, D) + " does not sum to 1";
            if (res_map(cf.form) != D)
                return "res_map(connection_form(" + format(c, D) + ")) != D";
            return std::string();
        });
        s.check("verify_connection_operator", inst, [&] {
            auto const cf = connection_form(c, D);
            auto const r = verify_connection_operator(cf.form, D, 1);
            return r.ok ? std::string() : "order 1 check failed for " + format(c, D) + ": " + r.failure;
        });
        s.check("gauge_equals", inst, [&] {
            auto const cls = make_class(s.rng.third_kind_form(inst));
            auto const f = s.rng.function(inst);
            if (!equals(cls, gauge(cls, f)).equal)
                return "class not equal to its gauge by " + format(f);
            return std::string();
        });
    }
}

void operator_suite(Suite& s, Instance const& inst)
{
    for (int i = 0; i < s.opts.samples / 2; ++i) {
        auto const a = s.rng.op(inst, 2), b = s.rng.op(inst, 1);
        auto const w = s.rng.third_kind_form(inst);
        s.check("phi_multiplicative", inst, [&] {
            if (phi(w, a * b) != phi(w, a) * phi(w, b))
                return "phi(ab) != phi(a) phi(b) for w = " + format(w);
            return std::string();
        });
        s.check("phi_inverse", inst, [&] {
            if (phi(-w, phi(w, a)) != a)
                return "phi(-w) o phi(w) != id for w = " + format(w);
            return std::string();
        });
    }
}

void splitting_suite(Suite& s, Instance const& inst)
{
    Curve const& c = inst.curve;
    auto const ctx = build_splitting(c, inst.points, s.opts.relation_bound);
    if (ctx.lattice.verdict == LatticeVerdict::bounded_search_only)
        s.report.warnings.push_back(inst.name + ": relation lattice is bounded-search-only (bound "
            + std::to_string(s.opts.relation_bound) + ")");
    for (int i = 0; i < s.opts.samples / 2; ++i) {
        auto const D1 = s.rng.divisor(inst, 3, 3), D2 = s.rng.divisor(inst, 3, 3);
        s.check("split_section", inst, [&] {
            if (res_map(split(ctx, D1)) != D1)
                return "res_map(split(" + format(c, D1) + ")) != D";
            return std::string();
        });
        s.check("split_additive", inst, [&] {
            if (split(ctx, D1 + D2) != split(ctx, D1) + split(ctx, D2))
                return "split not additive on " + format(c, D1) + ", " + format(c, D2);
            return std::string();
        });
    }
    s.check("extend_degree_zero", inst, [&] {
        auto const D = s.rng.divisor(inst, 3, 3);
        if (extend_divisor(c, D).degree() != 0)
            return "extended divisor of " + format(c, D) + " has nonzero degree";
        return std::string();
    });
}

void periods_suite(Suite& s, Instance const& inst)
{
    Curve const& c = inst.curve;
    double const tol = s.opts.tol;
    for (int i = 0; i < 3; ++i) {
        auto const w = s.rng.third_kind_form(inst);
        s.check("loop_period_residue", inst, [&] {
            auto const D = res_map(w);
            for (auto const& [P, n] : D.terms()) {
                auto const p = period({ w, 0 }, loop_cycle(c, P, w), tol);
                Complex const expect(0, 2 * std::numbers::pi * n);
                if (std::abs(p.value - expect) > 10 * tol)
                    return "loop period at " + format(c, P) + " is off by " + std::to_string(std::abs(p.value - expect));
            }
            return std::string();
        });
    }
    if (!c.is_elliptic())
        return;
    s.check("lattice_nondegenerate", inst, [&] {
        auto const H = holomorphic_periods(c, tol);
        if (std::abs((H.entries[1].value / H.entries[0].value).imag()) < 1e-6)
            return std::string("Omega_B / Omega_A is real");
        return std::string();
    });
    s.check("normalized_periods_imaginary", inst, [&] {
        auto const w = s.rng.third_kind_form(inst);
        auto const N = normalize_imaginary(w, tol);
        for (auto const& e : N.periods.entries)
            if (std::abs(e.value.real()) > 1e-7)
                return "cycle " + e.cycle + " keeps real part " + std::to_string(e.value.real());
        return std::string();
    });
}

} // namespace

VerifyReport run_verify_suite(VerifyOptions const& opts)
{
    Suite s(opts);
    for (auto const& inst : bundled_instances()) {
        divisor_suite(s, inst);
        residue_suite(s, inst);
        connection_suite(s, inst);
        operator_suite(s, inst);
        splitting_suite(s, inst);
        periods_suite(s, inst);
    }
    return std::move(s.report);
}

} // namespace connexion
