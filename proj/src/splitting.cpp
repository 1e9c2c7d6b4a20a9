#include "connexion/splitting.hpp"

#include "connexion/error.hpp"
#include "connexion/text.hpp"

#include "json.hpp"

#include <numeric>
#include <set>

namespace connexion {

namespace {

void require_support(Curve const& c, std::vector<Point> const& S)
{
    if (S.empty())
        throw domain_error("empty support set");
    std::set<Point> seen;
    for (auto const& P : S) {
        if (!c.contains(P))
            throw domain_error("support point " + format(c, P) + " is not on X");
        if (!seen.insert(P).second)
            throw domain_error("support point " + format(c, P) + " listed twice");
    }
}

Divisor divisor_of_vector(std::vector<Point> const& S, std::vector<Integer> const& v)
{
    Divisor D;
    for (size_t i = 0; i < S.size(); ++i)
        if (v[i] != 0)
            D.add(S[i], static_cast<int>(v[i].get_si()));
    return D;
}

bool is_relation(Curve const& c, std::vector<Point> const& S, std::vector<Integer> const& v)
{
    Point sum = Point::infinity();
    for (size_t i = 0; i < S.size(); ++i)
        if (v[i] != 0)
            sum = ell_add(c, sum, ell_mul(c, v[i].get_si(), S[i]));
    return sum.is_infinity();
}

// Divide out small primes from rows that stay relations.
IntegerMatrix saturate(Curve const& c, std::vector<Point> const& S, IntegerMatrix rows)
{
    bool changed = true;
    while (changed) {
        changed = false;
        rows = hermite_normal_form(std::move(rows));
        for (auto& row : rows) {
            Integer g = 0;
            for (auto const& e : row)
                g = gcd(g, e);
            for (long p : { 2, 3, 5, 7, 11 }) {
                if (g % p != 0)
                    continue;
                std::vector<Integer> r = row;
                for (auto& e : r)
                    e /= p;
                if (is_relation(c, S, r)) {
                    row = std::move(r);
                    changed = true;
                    break;
                }
            }
            if (changed)
                break;
        }
    }
    return rows;
}

} // namespace

RelationLattice relation_lattice(Curve const& c, std::vector<Point> const& S, int bound)
{
    require_support(c, S);
    if (bound < 1)
        throw domain_error("relation search bound must be at least 1");
    size_t const k = S.size();
    RelationLattice L;
    if (!c.is_elliptic()) {
        // Every divisor on a punctured line is principal.
        for (size_t i = 0; i < k; ++i) {
            std::vector<Integer> row(k, 0);
            row[i] = 1;
            L.basis.push_back(std::move(row));
        }
        return L;
    }
    // Torsion coordinates range over a full period, the others over
    // [-bound, bound].
    std::vector<long> lo(k), hi(k);
    std::vector<int> order(k);
    IntegerMatrix rows;
    double box = 1;
    for (size_t i = 0; i < k; ++i) {
        order[i] = torsion_order(c, S[i]);
        if (order[i] > 0) {
            lo[i] = 0;
            hi[i] = order[i] - 1;
            std::vector<Integer> row(k, 0);
            row[i] = order[i];
            rows.push_back(std::move(row));
        } else {
            lo[i] = -bound;
            hi[i] = bound;
            L.verdict = LatticeVerdict::bounded_search_only;
        }
        box *= static_cast<double>(hi[i] - lo[i] + 1);
    }
    if (box > 2e5)
        throw domain_error("relation search box too large; lower the bound or shrink the support");

    std::vector<std::vector<Point>> multiples(k);
    for (size_t i = 0; i < k; ++i) {
        Point const start = ell_mul(c, lo[i], S[i]);
        multiples[i].push_back(start);
        for (long v = lo[i] + 1; v <= hi[i]; ++v)
            multiples[i].push_back(ell_add(c, multiples[i].back(), S[i]));
    }
    std::vector<long> v(lo);
    while (true) {
        Point sum = Point::infinity();
        bool zero = true;
        for (size_t i = 0; i < k; ++i) {
            sum = ell_add(c, sum, multiples[i][static_cast<size_t>(v[i] - lo[i])]);
            zero = zero && v[i] == 0;
        }
        if (sum.is_infinity() && !zero)
            rows.emplace_back(v.begin(), v.end());
        size_t i = 0;
        while (i < k && v[i] == hi[i]) {
            v[i] = lo[i];
            ++i;
        }
        if (i == k)
            break;
        ++v[i];
    }
    L.basis = rows.empty() ? IntegerMatrix{} : saturate(c, S, std::move(rows));
    return L;
}

Differential third_kind_basis(Curve const& c, Point const& P)
{
    if (!c.contains(P))
        throw domain_error("third_kind_basis: point " + format(c, P) + " is not on X");
    if (!c.is_elliptic())
        return dlog(Function(c, RatFunc(Poly::linear(P.x()))));

    // Ansatz sum u_m mu_m / (x - x0)^K * dx/y over monomials mu_m of O(X);
    // conditions: no pole of order >= 2 over x0, residue 1 at P and 0 at
    // its conjugate.
    auto const over = c.points_over(P.x());
    Function const y = Function::y(c);
    Differential const base = Differential::canonical_regular(c);
    for (int K = 1; K <= 3; ++K) {
        Function const den(c, RatFunc(Poly::linear(P.x()).pow(static_cast<unsigned>(K))));
        std::vector<Differential> ansatz;
        for (int i = 0; i < K; ++i) {
            Function const xi(c, RatFunc(Poly::monomial(1, i)));
            ansatz.push_back((xi / den) * base);
            ansatz.push_back((xi * y / den) * base);
        }
        // Laurent coefficients z^-e, e = 2K+2 .. 1, at each point over x0.
        int const depth = 2 * K + 2;
        RationalMatrix A;
        std::vector<Rational> rhs;
        for (auto const& Q : over) {
            std::vector<std::vector<Rational>> rowsQ(static_cast<size_t>(depth), std::vector<Rational>(ansatz.size()));
            for (size_t m = 0; m < ansatz.size(); ++m) {
                auto const ser = local_form_expansion(ansatz[m], Q, depth + 2);
                for (int e = 1; e <= depth; ++e)
                    rowsQ[static_cast<size_t>(e - 1)][m] = ser.coeff(-e);
            }
            for (int e = depth; e >= 2; --e) {
                A.push_back(rowsQ[static_cast<size_t>(e - 1)]);
                rhs.push_back(0);
            }
            A.push_back(rowsQ[0]);
            rhs.push_back(Q == P ? 1 : 0);
        }
        auto sol = solve_linear(A, rhs);
        if (!sol)
            continue;
        Differential w = Differential::zero(c);
        for (size_t m = 0; m < ansatz.size(); ++m)
            if ((*sol)[m] != 0)
                w += (*sol)[m] * ansatz[m];
        return w;
    }
    throw domain_error("third_kind_basis: ansatz exhausted at " + format(c, P));
}

SplittingContext build_splitting(Curve const& c, std::vector<Point> const& S, int bound)
{
    SplittingContext ctx{ c, S, bound, relation_lattice(c, S, bound), {}, {}, {} };
    for (auto const& row : ctx.lattice.basis)
        ctx.witnesses.push_back(function_with_divisor(c, divisor_of_vector(S, row)));
    RationalMatrix span;
    for (auto const& row : ctx.lattice.basis)
        span.emplace_back(row.begin(), row.end());
    int r = rank(span);
    for (size_t j = 0; j < S.size() && r < static_cast<int>(S.size()); ++j) {
        std::vector<Rational> e(S.size(), 0);
        e[j] = 1;
        span.push_back(e);
        int const r2 = rank(span);
        if (r2 > r) {
            r = r2;
            ctx.complement.push_back(j);
            ctx.complement_forms.push_back(third_kind_basis(c, S[j]));
        } else {
            span.pop_back();
        }
    }
    return ctx;
}

Differential split(SplittingContext const& ctx, Divisor const& D)
{
    size_t const k = ctx.support.size();
    std::vector<Rational> d(k, 0);
    for (auto const& [P, n] : D.terms()) {
        auto it = std::find(ctx.support.begin(), ctx.support.end(), P);
        if (it == ctx.support.end())
            throw domain_error("split: " + format(ctx.curve, P) + " is outside the support set");
        d[static_cast<size_t>(it - ctx.support.begin())] = n;
    }
    // Columns of A are the basis vectors: lattice rows, then unit vectors.
    size_t const nb = ctx.lattice.basis.size() + ctx.complement.size();
    RationalMatrix A(k, std::vector<Rational>(nb, 0));
    for (size_t r = 0; r < ctx.lattice.basis.size(); ++r)
        for (size_t i = 0; i < k; ++i)
            A[i][r] = ctx.lattice.basis[r][i];
    for (size_t j = 0; j < ctx.complement.size(); ++j)
        A[ctx.complement[j]][ctx.lattice.basis.size() + j] = 1;
    auto q = solve_linear(std::move(A), std::move(d));
    if (!q)
        throw domain_error("split: basis does not span Q^S");
    Differential w = Differential::zero(ctx.curve);
    for (size_t r = 0; r < ctx.lattice.basis.size(); ++r)
        if ((*q)[r] != 0)
            w += (*q)[r] * dlog(ctx.witnesses[r]);
    for (size_t j = 0; j < ctx.complement.size(); ++j) {
        auto const& qj = (*q)[ctx.lattice.basis.size() + j];
        if (qj != 0)
            w += qj * ctx.complement_forms[j];
    }
    return w;
}

Divisor extend_divisor(Curve const& c, Divisor const& D)
{
    require_on_curve(c, D);
    Divisor E = D;
    long const deg = D.degree();
    if (deg != 0)
        E.add(c.distinguished_puncture(), static_cast<int>(-deg));
    return E;
}

std::string context_to_json(SplittingContext const& ctx)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["curve"] = ordered_json::parse(curve_to_json(ctx.curve));
    auto support = ordered_json::array();
    for (auto const& P : ctx.support)
        support.push_back(format(ctx.curve, P));
    j["support"] = support;
    j["bound"] = ctx.bound;
    auto basis = ordered_json::array();
    for (auto const& row : ctx.lattice.basis) {
        auto r = ordered_json::array();
        for (auto const& e : row)
            r.push_back(e.get_str());
        basis.push_back(r);
    }
    j["lattice"] = { { "basis", basis },
        { "verdict", ctx.lattice.verdict == LatticeVerdict::complete ? "complete" : "bounded-search-only" } };
    auto wit = ordered_json::array();
    for (auto const& f : ctx.witnesses)
        wit.push_back(format(f));
    j["witnesses"] = wit;
    auto comp = ordered_json::array();
    for (size_t i = 0; i < ctx.complement.size(); ++i)
        comp.push_back({ { "index", ctx.complement[i] }, { "form", format(ctx.complement_forms[i]) } });
    j["complement"] = comp;
    return j.dump(2);
}

SplittingContext context_from_json(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (nlohmann::json::exception const& e) {
        throw input_error(std::string("splitting context is not valid JSON: ") + e.what());
    }
    try {
        Curve const c = parse_curve_json(j.at("curve").dump());
        SplittingContext ctx{ c, {}, j.at("bound").get<int>(), {}, {}, {}, {} };
        for (auto const& p : j.at("support"))
            ctx.support.push_back(parse_point(c, p.get<std::string>()));
        require_support(c, ctx.support);
        for (auto const& r : j.at("lattice").at("basis")) {
            std::vector<Integer> row;
            for (auto const& e : r)
                row.emplace_back(e.get<std::string>());
            if (row.size() != ctx.support.size())
                throw input_error("lattice row of the wrong length");
            ctx.lattice.basis.push_back(std::move(row));
        }
        auto const verdict = j.at("lattice").at("verdict").get<std::string>();
        if (verdict == "complete")
            ctx.lattice.verdict = LatticeVerdict::complete;
        else if (verdict == "bounded-search-only")
            ctx.lattice.verdict = LatticeVerdict::bounded_search_only;
        else
            throw input_error("unknown lattice verdict '" + verdict + "'");
        for (auto const& w : j.at("witnesses"))
            ctx.witnesses.push_back(parse_function(c, w.get<std::string>()));
        if (ctx.witnesses.size() != ctx.lattice.basis.size())
            throw input_error("one witness per lattice row expected");
        for (size_t r = 0; r < ctx.witnesses.size(); ++r)
            if (divisor_of(ctx.witnesses[r]) != divisor_of_vector(ctx.support, ctx.lattice.basis[r]))
                throw input_error("witness " + std::to_string(r) + " does not match its lattice row");
        for (auto const& e : j.at("complement")) {
            auto const idx = e.at("index").get<size_t>();
            if (idx >= ctx.support.size())
                throw input_error("complement index out of range");
            auto w = parse_differential(c, e.at("form").get<std::string>());
            if (res_map(w) != Divisor::point(ctx.support[idx]))
                throw input_error("complement form " + std::to_string(idx) + " has the wrong residues");
            ctx.complement.push_back(idx);
            ctx.complement_forms.push_back(std::move(w));
        }
        RationalMatrix span;
        for (auto const& row : ctx.lattice.basis)
            span.emplace_back(row.begin(), row.end());
        for (auto idx : ctx.complement) {
            std::vector<Rational> e(ctx.support.size(), 0);
            e[idx] = 1;
            span.push_back(e);
        }
        if (span.size() != ctx.support.size() || rank(span) != static_cast<int>(span.size()))
            throw input_error("stored basis is not a basis of Q^S");
        return ctx;
    } catch (nlohmann::json::exception const& e) {
        throw input_error(std::string("malformed splitting context: ") + e.what());
    } catch (domain_error const& e) {
        throw input_error(std::string("inconsistent splitting context: ") + e.what());
    }
}

} // namespace connexion
