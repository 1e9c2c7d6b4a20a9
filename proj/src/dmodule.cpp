#include "connexion/dmodule.hpp"

#include "connexion/error.hpp"
#include "connexion/text.hpp"
#include "expr.hpp"

namespace connexion {

DiffOperator::DiffOperator(Curve c, std::vector<Function> coeffs)
    : curve_(std::move(c))
    , g_(std::move(coeffs))
{
    for (auto const& g : g_)
        if (g.curve() != curve_)
            throw domain_error("operator coefficient on a different curve");
    trim();
}

void DiffOperator::trim()
{
    while (!g_.empty() && g_.back().is_zero())
        g_.pop_back();
}

DiffOperator DiffOperator::multiplication(Function const& g)
{
    return DiffOperator(g.curve(), { g });
}

DiffOperator DiffOperator::derivation_power(Curve const& c, int n)
{
    std::vector<Function> g(static_cast<size_t>(n) + 1, Function::constant(c, 0));
    g.back() = Function::constant(c, 1);
    return DiffOperator(c, std::move(g));
}

Function DiffOperator::coefficient(int i) const
{
    if (i < 0 || i > order())
        return Function::constant(curve_, 0);
    return g_[static_cast<size_t>(i)];
}

DiffOperator DiffOperator::operator-() const
{
    DiffOperator r = *this;
    for (auto& g : r.g_)
        g = -g;
    return r;
}

namespace {

void require_same(DiffOperator const& a, DiffOperator const& b)
{
    if (a.curve() != b.curve())
        throw domain_error("operators on different curves");
}

} // namespace

DiffOperator operator+(DiffOperator const& a, DiffOperator const& b)
{
    require_same(a, b);
    int const n = std::max(a.order(), b.order());
    std::vector<Function> g;
    for (int i = 0; i <= n; ++i)
        g.push_back(a.coefficient(i) + b.coefficient(i));
    return DiffOperator(a.curve(), std::move(g));
}

DiffOperator operator-(DiffOperator const& a, DiffOperator const& b)
{
    return a + (-b);
}

// (g d^i)(h d^j) = g sum_k C(i,k) d^k(h) d^(i-k+j)
DiffOperator operator*(DiffOperator const& a, DiffOperator const& b)
{
    require_same(a, b);
    Curve const& c = a.curve();
    if (a.is_zero() || b.is_zero())
        return DiffOperator(c);
    Derivation const d = distinguished_derivation(c);
    int const n = a.order() + b.order();
    std::vector<Function> out(static_cast<size_t>(n) + 1, Function::constant(c, 0));
    for (int j = 0; j <= b.order(); ++j) {
        Function h = b.coefficient(j);
        if (h.is_zero())
            continue;
        // derivatives d^k(h) for k <= order(a)
        std::vector<Function> dh{ h };
        for (int k = 1; k <= a.order(); ++k)
            dh.push_back(d(dh.back()));
        for (int i = 0; i <= a.order(); ++i) {
            Function const& g = a.coefficients()[static_cast<size_t>(i)];
            if (g.is_zero())
                continue;
            Integer binom = 1;
            for (int k = 0; k <= i; ++k) {
                if (!dh[static_cast<size_t>(k)].is_zero())
                    out[static_cast<size_t>(i - k + j)] += g * dh[static_cast<size_t>(k)] * Rational(binom);
                binom = binom * (i - k) / (k + 1);
            }
        }
    }
    return DiffOperator(c, std::move(out));
}

bool operator==(DiffOperator const& a, DiffOperator const& b)
{
    return a.curve() == b.curve() && a.g_ == b.g_;
}

Function DiffOperator::apply(Function const& g) const
{
    if (g.curve() != curve_)
        throw domain_error("applying an operator to a function on another curve");
    Derivation const d = distinguished_derivation(curve_);
    Function out = Function::constant(curve_, 0);
    Function dg = g;
    for (int i = 0; i <= order(); ++i) {
        if (i > 0)
            dg = d(dg);
        out += g_[static_cast<size_t>(i)] * dg;
    }
    return out;
}

DiffOperator op_compose(DiffOperator const& a, DiffOperator const& b)
{
    return a * b;
}

DiffOperator op_add(DiffOperator const& a, DiffOperator const& b)
{
    return a + b;
}

DiffOperator commutator(DiffOperator const& a, DiffOperator const& b)
{
    return a * b - b * a;
}

DiffOperator phi(Differential const& w, DiffOperator const& theta)
{
    Curve const& c = theta.curve();
    if (w.curve() != c)
        throw domain_error("phi: form and operator on different curves");
    Function const h = pairing(w, distinguished_derivation(c));
    DiffOperator const shifted(c, { h, Function::constant(c, 1) });
    DiffOperator out(c);
    DiffOperator power = DiffOperator::multiplication(Function::constant(c, 1));
    for (int i = 0; i <= theta.order(); ++i) {
        if (i > 0)
            power = power * shifted;
        auto const& g = theta.coefficients()[static_cast<size_t>(i)];
        if (!g.is_zero())
            out = out + DiffOperator::multiplication(g) * power;
    }
    return out;
}

bool preserves(DiffOperator const& theta, FractionalIdeal const& I)
{
    if (theta.curve() != I.curve())
        throw domain_error("preserves: operator and ideal on different curves");
    for (auto const& g : I.generators())
        if (!membership(theta.apply(g), I))
            return false;
    if (theta.order() <= 0)
        return true;
    for (auto const& r : ring_generators(I.curve()))
        if (!preserves(commutator(theta, DiffOperator::multiplication(r)), I))
            return false;
    return true;
}

ConnectionCheck verify_connection_operator(Differential const& w, Divisor const& D, int n)
{
    if (n < 1)
        throw domain_error("verify_connection_operator: order bound must be at least 1");
    Curve const& c = w.curve();
    ConnectionCheck out;
    out.order_bound = n;
    auto const I = ideal_of_divisor(c, D);
    auto const Iinv = ideal_of_divisor(c, -D);
    auto const O = ideal_of_divisor(c, Divisor{});

    std::vector<DiffOperator> forward;
    for (auto const& r : ring_generators(c))
        forward.push_back(DiffOperator::multiplication(r));
    for (int i = 1; i <= n; ++i)
        forward.push_back(DiffOperator::derivation_power(c, i));
    for (auto const& theta : forward) {
        if (!preserves(phi(w, theta), I)) {
            out.failure = "phi(" + format(theta) + ") does not preserve I_D";
            return out;
        }
    }
    Differential const minus = -w;
    for (auto const& g : I.generators())
        for (auto const& h : Iinv.generators())
            for (int i = 0; i <= n; ++i) {
                auto const theta = DiffOperator::multiplication(g) * DiffOperator::derivation_power(c, i)
                    * DiffOperator::multiplication(h);
                if (!preserves(phi(minus, theta), O)) {
                    out.failure = "phi^-1(" + format(theta) + ") does not preserve O(X)";
                    return out;
                }
            }
    out.ok = true;
    return out;
}

namespace {

DiffOperator eval_operator(Curve const& c, ExprNode const& n, std::string_view src)
{
    auto bad = [&](std::string const& why) {
        return input_error("in operator '" + std::string(src) + "': " + why);
    };
    // A subtree without d is a function, evaluated directly.
    auto as_function = [&](ExprNode const& e) -> std::optional<Function> {
        auto op = eval_operator(c, e, src);
        if (op.order() <= 0)
            return op.coefficient(0);
        return std::nullopt;
    };
    switch (n.kind) {
    case ExprNode::num:
        return DiffOperator::multiplication(Function::constant(c, n.value));
    case ExprNode::var:
        if (n.name == "d")
            return DiffOperator::derivation_power(c, 1);
        if (n.name.size() == 2 && n.name[0] == 'd')
            throw bad("1-forms are not operators");
        return DiffOperator::multiplication(parse_function(c, n.name));
    case ExprNode::neg:
        return -eval_operator(c, *n.l, src);
    case ExprNode::add:
        return eval_operator(c, *n.l, src) + eval_operator(c, *n.r, src);
    case ExprNode::sub:
        return eval_operator(c, *n.l, src) - eval_operator(c, *n.r, src);
    case ExprNode::mul:
        return eval_operator(c, *n.l, src) * eval_operator(c, *n.r, src);
    case ExprNode::div: {
        auto den = as_function(*n.r);
        if (!den)
            throw bad("division by an operator");
        if (den->is_zero())
            throw bad("division by zero");
        return eval_operator(c, *n.l, src) * DiffOperator::multiplication(den->inverse());
    }
    case ExprNode::pow: {
        auto base = eval_operator(c, *n.l, src);
        if (base.order() <= 0) {
            auto const f = base.coefficient(0);
            if (f.is_zero() && n.exponent < 0)
                throw bad("division by zero");
            return DiffOperator::multiplication(f.pow(n.exponent));
        }
        if (n.exponent < 0)
            throw bad("negative power of an operator");
        DiffOperator out = DiffOperator::multiplication(Function::constant(c, 1));
        for (int i = 0; i < n.exponent; ++i)
            out = out * base;
        return out;
    }
    }
    throw bad("unreachable");
}

} // namespace

DiffOperator parse_operator(Curve const& c, std::string_view s)
{
    auto tree = parse_expression_tree(s);
    return eval_operator(c, *tree, s);
}

namespace {

// " + " or " - " outside any parentheses.
bool top_level_sum(std::string const& s)
{
    int depth = 0;
    for (size_t i = 0; i + 2 < s.size(); ++i) {
        depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
        if (depth == 0 && s[i] == ' ' && (s[i + 1] == '+' || s[i + 1] == '-') && s[i + 2] == ' ')
            return true;
    }
    return false;
}

} // namespace

std::string format(DiffOperator const& op)
{
    if (op.is_zero())
        return "0";
    std::string out;
    for (int i = op.order(); i >= 0; --i) {
        auto const& g = op.coefficients()[static_cast<size_t>(i)];
        if (g.is_zero())
            continue;
        std::string dpart = i == 0 ? "" : i == 1 ? "d" : "d^" + std::to_string(i);
        std::string coef = format(g);
        bool const sum = top_level_sum(coef);
        bool neg = false;
        if (!sum && coef[0] == '-') {
            neg = true;
            coef = coef.substr(1);
        }
        std::string term;
        if (i == 0)
            term = sum ? "(" + coef + ")" : coef;
        else if (coef == "1")
            term = dpart;
        else
            term = (sum ? "(" + coef + ")" : coef) + "*" + dpart;
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out;
}

} // namespace connexion
