#include "connexion/cli.hpp"

#include "connexion/connection.hpp"
#include "connexion/dmodule.hpp"
#include "connexion/error.hpp"
#include "connexion/periods.hpp"
#include "connexion/splitting.hpp"
#include "connexion/text.hpp"
#include "connexion/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace connexion {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0 ? 0.0 : v);
    return buf;
}

std::string err_num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1e", v);
    return buf;
}

std::string complex_text(Complex v)
{
    return num(v.real()) + (v.imag() < 0 ? " - " : " + ") + num(std::abs(v.imag())) + "i";
}

json complex_json(Complex v)
{
    return { { "re", v.real() }, { "im", v.imag() } };
}

// "D; form" class input; the divisor must match the residues of the form.
ConnectionClass parse_class(Curve const& c, std::string const& s)
{
    auto const semi = s.find(';');
    if (semi == std::string::npos)
        throw input_error("class input '" + s + "' must read \"divisor; form\"");
    auto const D = parse_divisor(c, s.substr(0, semi));
    auto const w = parse_differential(c, s.substr(semi + 1));
    Divisor res;
    try {
        res = res_map(w);
    } catch (unsupported_error const&) {
        throw;
    } catch (domain_error const& e) {
        throw input_error("class input '" + s + "': " + e.what());
    }
    if (res != D)
        throw input_error("class input '" + s + "': residues of the form are " + format(c, res));
    return { D, w };
}

std::vector<Point> parse_point_list(Curve const& c, std::string const& s)
{
    std::vector<Point> pts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (item.find_first_not_of(" \t") != std::string::npos)
            pts.push_back(parse_point(c, item));
    return pts;
}

Cycle pick_cycle(Curve const& c, Differential const& w, std::string const& name)
{
    if (name == "A" || name == "B") {
        auto const cycles = generator_cycles(c, w);
        return cycles[name == "A" ? 0 : 1];
    }
    return loop_cycle(c, parse_point(c, name), w);
}

struct Common {
    std::string curve_path;
    std::string format = "text";
};

class Cli {
public:
    Cli(std::ostream& out) : out_(out) {}

    int run(std::vector<std::string> const& args);

private:
    bool json_out() const { return common_.format == "json"; }
    Curve curve() const { return parse_curve_json(read_file(common_.curve_path)); }
    void emit(json const& j, std::string const& text) { out_ << (json_out() ? j.dump(2) : text) << "\n"; }

    std::ostream& out_;
    Common common_;
};

int Cli::run(std::vector<std::string> const& args)
{
    CLI::App app{ "Divisors, connections and periods on punctured lines and elliptic curves", "connexion" };
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    int rc = 0;
    auto add = [&](std::string const& name, std::string const& desc, bool needs_curve = true) {
        auto* sub = app.add_subcommand(name, desc);
        auto* opt = sub->add_option("--curve", common_.curve_path, "curve spec JSON file");
        if (needs_curve)
            opt->required();
        sub->add_option("--format", common_.format, "text or json")->check(CLI::IsMember({ "text", "json" }));
        return sub;
    };

    std::string form, point, divisor, function, a, b, support, context_in, context_out, cycle;
    std::vector<std::string> loops;
    int order = 2, bound = 16, samples = 12;
    double tol = 1e-9;
    bool require_witness = false, completion = false, normalize = false, inject = false;
    std::uint64_t seed = 20240601;

    auto* residue_cmd = add("residue", "residue of a form at a point");
    residue_cmd->add_option("--form", form)->required();
    residue_cmd->add_option("--point", point)->required();
    residue_cmd->callback([&] {
        auto const c = curve();
        auto const r = residue(parse_differential(c, form), parse_point(c, point));
        emit({ { "residue", format(r) } }, format(r));
    });

    auto* divof = add("divisor-of", "divisor of zeros and poles on X");
    divof->add_option("--function", function)->required();
    divof->add_flag("--completion", completion, "include the punctures");
    divof->callback([&] {
        auto const c = curve();
        auto const g = parse_function(c, function);
        if (g.is_zero())
            throw domain_error("divisor of the zero function");
        Divisor D;
        try {
            D = completion ? completion_divisor_of(g) : divisor_of(g);
        } catch (unsupported_error const& e) {
            throw unsupported_error("divisor of " + function + ": " + e.what());
        }
        emit({ { "divisor", format(c, D) } }, format(c, D));
    });

    auto* principal = add("principal", "principality test with witness");
    principal->add_option("--divisor", divisor)->required();
    principal->add_flag("--require-witness", require_witness, "exit 1 unless a witness exists");
    principal->callback([&] {
        auto const c = curve();
        auto const D = parse_divisor(c, divisor);
        auto const cert = is_principal(c, D);
        json j;
        std::string text;
        switch (cert.verdict) {
        case Verdict::principal:
            j["verdict"] = "principal";
            j["witness"] = format(*cert.witness);
            text = "principal (witness: " + format(*cert.witness) + ")";
            break;
        case Verdict::not_principal:
            j["verdict"] = "not principal";
            text = "not principal";
            if (cert.obstruction) {
                j["obstruction"] = format(c, *cert.obstruction);
                text += " (obstruction: " + format(c, *cert.obstruction) + ")";
            }
            break;
        case Verdict::inconclusive:
            j["verdict"] = "inconclusive";
            text = "inconclusive";
            break;
        }
        if (require_witness && cert.verdict != Verdict::principal)
            throw domain_error(format(c, D) + " has no witness: " + text);
        emit(j, text);
    });

    auto* connect = add("connect", "connection form of a divisor via a Bezout system");
    connect->add_option("--divisor", divisor)->required();
    connect->callback([&] {
        auto const c = curve();
        auto const D = parse_divisor(c, divisor);
        auto const cf = connection_form(c, D);
        auto const res = res_map(cf.form);
        json j{ { "divisor", format(c, D) }, { "form", format(cf.form) }, { "residues", format(c, res) } };
        std::string text = "form: " + format(cf.form) + "\nresidues: " + format(c, res) + "\nbezout:";
        auto sys = json::array();
        for (size_t k = 0; k < cf.system.alpha.size(); ++k) {
            sys.push_back({ { "alpha", format(cf.system.alpha[k]) }, { "beta", format(cf.system.beta[k]) } });
            text += "\n  alpha = " + format(cf.system.alpha[k]) + ", beta = " + format(cf.system.beta[k]);
        }
        j["bezout"] = sys;
        emit(j, text);
    });

    auto* vconn = add("verify-connection", "check that phi_w maps D(X) onto D(I_D) up to an order bound");
    vconn->add_option("--divisor", divisor)->required();
    vconn->add_option("--form", form, "defaults to the connection form of the divisor");
    vconn->add_option("--order", order, "operator order bound")->check(CLI::PositiveNumber);
    vconn->callback([&] {
        auto const c = curve();
        auto const D = parse_divisor(c, divisor);
        auto const w = form.empty() ? connection_form(c, D).form : parse_differential(c, form);
        auto const r = verify_connection_operator(w, D, order);
        std::string const bnd = "order <= " + std::to_string(r.order_bound);
        emit({ { "ok", r.ok }, { "order_bound", r.order_bound }, { "failure", r.failure } },
            r.ok ? "ok (" + bnd + ")" : "failed (" + bnd + "): " + r.failure);
        if (!r.ok)
            rc = 1;
    });

    auto* cequal = add("class-equal", "equality in Pic-flat of two \"divisor; form\" classes");
    cequal->add_option("--a", a)->required();
    cequal->add_option("--b", b)->required();
    cequal->callback([&] {
        auto const c = curve();
        auto const r = equals(parse_class(c, a), parse_class(c, b));
        json j{ { "equal", r.equal } };
        std::string text = r.equal ? "equal" : "not equal";
        std::vector<std::string> notes;
        if (r.equal && r.principal_witness && !r.principal_witness->is_constant()) {
            j["witness"] = format(*r.principal_witness);
            notes.push_back("witness: " + format(*r.principal_witness));
        }
        if (r.unit_witness) {
            j["unit_witness"] = format(*r.unit_witness);
            notes.push_back("unit witness: " + format(*r.unit_witness));
        }
        if (!r.equal) {
            j["reason"] = r.reason;
            notes.push_back(r.reason);
        }
        if (!notes.empty()) {
            text += " (";
            for (size_t i = 0; i < notes.size(); ++i)
                text += (i ? ", " : "") + notes[i];
            text += ")";
        }
        emit(j, text);
    });

    auto* splitc = add("split", "algebraic splitting s(D) over a finite support set", false);
    splitc->add_option("--divisor", divisor)->required();
    splitc->add_option("--support", support, "points separated by ';' (default: support of D)");
    splitc->add_option("--bound", bound, "relation search bound")->check(CLI::PositiveNumber);
    splitc->add_option("--context", context_in, "load a saved splitting context");
    splitc->add_option("--save", context_out, "write the splitting context as JSON");
    splitc->callback([&] {
        auto const ctx = [&] {
            if (!context_in.empty())
                return context_from_json(read_file(context_in));
            auto const c = curve();
            auto const D0 = parse_divisor(c, divisor);
            auto S = support.empty() ? D0.support() : parse_point_list(c, support);
            if (S.empty())
                throw input_error("empty support set: give --support or a nonzero divisor");
            return build_splitting(c, S, bound);
        }();
        Curve const& c = ctx.curve;
        auto const D = parse_divisor(c, divisor);
        if (!context_out.empty()) {
            std::ofstream f(context_out);
            if (!f)
                throw input_error("cannot write " + context_out);
            f << context_to_json(ctx) << "\n";
        }
        auto const w = split(ctx, D);
        std::string const verdict
            = ctx.lattice.verdict == LatticeVerdict::complete ? "complete" : "bounded-search-only";
        emit({ { "form", format(w) }, { "residues", format(c, res_map(w)) }, { "lattice", verdict },
                 { "bound", ctx.bound } },
            "form: " + format(w) + "\nresidues: " + format(c, res_map(w)) + "\nlattice: " + verdict
                + " (bound " + std::to_string(ctx.bound) + ")");
    });

    auto* extend = add("extend", "extend a divisor to a degree zero divisor on the completion");
    extend->add_option("--divisor", divisor)->required();
    extend->callback([&] {
        auto const c = curve();
        auto const E = extend_divisor(c, parse_divisor(c, divisor));
        emit({ { "divisor", format(c, E) } }, format(c, E));
    });

    auto* periodsc = add("periods", "periods over generator cycles and loops");
    periodsc->add_option("--form", form, "defaults to the canonical regular form");
    periodsc->add_option("--loop", loops, "also integrate over a small loop around this point");
    periodsc->add_option("--tol", tol)->check(CLI::PositiveNumber);
    periodsc->callback([&] {
        auto const c = curve();
        auto const w = form.empty() ? Differential::canonical_regular(c) : parse_differential(c, form);
        std::vector<Cycle> cycles;
        if (c.is_elliptic())
            cycles = generator_cycles(c, w);
        for (auto const& l : loops)
            cycles.push_back(loop_cycle(c, parse_point(c, l), w));
        if (cycles.empty())
            for (auto const& P : c.completion_punctures())
                cycles.push_back(loop_cycle(c, P, w));
        auto const pd = third_kind_periods(w, cycles, tol);
        json arr = json::array();
        std::string text;
        for (auto const& e : pd.entries) {
            arr.push_back({ { "cycle", e.cycle }, { "value", complex_json(e.value) }, { "error", e.error },
                { "nodes", e.nodes } });
            text += (text.empty() ? "" : "\n") + e.cycle + ": " + complex_text(e.value) + " (error " + err_num(e.error) + ")";
        }
        emit({ { "form", format(w) }, { "tol", tol }, { "periods", arr } }, text);
    });

    auto* norm = add("normalize", "make all periods purely imaginary by subtracting c * dx/y");
    norm->add_option("--form", form)->required();
    norm->add_option("--tol", tol)->check(CLI::PositiveNumber);
    norm->callback([&] {
        auto const c = curve();
        auto const N = normalize_imaginary(parse_differential(c, form), tol);
        json arr = json::array();
        std::string text = "c: " + complex_text(N.form.c) + "\nnormalized: " + format(N.form.exact)
            + (c.is_elliptic() ? " - c * dx/y" : "");
        for (auto const& e : N.periods.entries) {
            arr.push_back({ { "cycle", e.cycle }, { "value", complex_json(e.value) }, { "error", e.error } });
            text += "\n" + e.cycle + ": " + complex_text(e.value) + " (error " + err_num(e.error) + ")";
        }
        emit({ { "form", format(N.form.exact) }, { "c", complex_json(N.form.c) }, { "condition", N.condition },
                 { "periods", arr } },
            text);
    });

    auto* charc = add("character", "unit character exp(period) over a cycle");
    charc->add_option("--form", form)->required();
    charc->add_option("--cycle", cycle, "A, B or a point for a small loop")->required();
    charc->add_flag("--normalize", normalize, "normalize the form first");
    charc->add_option("--tol", tol)->check(CLI::PositiveNumber);
    charc->callback([&] {
        auto const c = curve();
        auto const w = parse_differential(c, form);
        NormalizedForm nf{ w, 0 };
        if (normalize)
            nf = normalize_imaginary(w, tol).form;
        auto const v = unit_character(nf, pick_cycle(c, w, cycle), tol);
        auto const p = polar_decompose(v.value);
        emit({ { "value", complex_json(v.value) }, { "modulus", std::abs(v.value) }, { "lambda", p.lambda },
                 { "theta", p.theta }, { "error", v.error } },
            "value: " + complex_text(v.value) + "\nmodulus: " + num(std::abs(v.value)) + "\npolar: lambda = "
                + num(p.lambda) + ", theta = " + num(p.theta) + "\nerror: " + err_num(v.error));
    });

    auto* verify = add("verify", "run the invariant suites on the bundled instances", false);
    verify->add_option("--relation-bound", bound)->check(CLI::PositiveNumber);
    verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed);
    verify->add_option("--tol", tol)->check(CLI::PositiveNumber);
    verify->add_flag("--inject-infinity-sign-flip", inject, "mutation check: wrong residue sign at infinity");
    verify->callback([&] {
        VerifyOptions o;
        o.relation_bound = bound;
        o.samples = samples;
        o.seed = seed;
        o.tol = tol;
        o.inject_infinity_sign_flip = inject;
        auto const r = run_verify_suite(o);
        out_ << r.to_json() << "\n";
        if (!r.passed())
            rc = 1;
    });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (CLI::CallForHelp const&) {
        out_ << app.help();
        return 0;
    } catch (CLI::CallForAllHelp const&) {
        out_ << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (CLI::ParseError const& e) {
        throw input_error(e.what());
    }
    return rc;
}

} // namespace

int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    try {
        return Cli(out).run(args);
    } catch (input_error const& e) {
        err << "connexion: " << e.what() << "\n";
        return 2;
    } catch (error const& e) {
        err << "connexion: " << e.what() << "\n";
        return 1;
    } catch (std::exception const& e) {
        err << "connexion: " << e.what() << "\n";
        return 1;
    }
}

} // namespace connexion
