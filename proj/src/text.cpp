#include "connexion/text.hpp"

#include "connexion/error.hpp"
#include "expr.hpp"

#include "json.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <sstream>

namespace connexion {

std::string format(Rational const& q)
{
    return q.get_str();
}

namespace {

std::string format_point(Curve const& c, Point const& P)
{
    if (P.is_infinity())
        return "(inf)";
    if (!c.is_elliptic())
        return "(" + format(P.x()) + ")";
    return "(" + format(P.x()) + "," + format(P.y()) + ")";
}

std::string format_divisor(Curve const& c, Divisor const& D)
{
    if (D.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (auto const& [P, n] : D.terms()) {
        std::string const pt = format_point(c, P);
        if (first)
            out += std::to_string(n) + "*" + pt;
        else
            out += (n < 0 ? " - " : " + ") + std::to_string(n < 0 ? -n : n) + "*" + pt;
        first = false;
    }
    return out;
}

// Monomial c * v^i * tail, written so that it reparses.
struct Term {
    Rational c;
    std::string body; // "" for a constant
};

std::string monomial_body(char var, int i, bool with_y)
{
    std::string s;
    if (i == 1)
        s = std::string(1, var);
    else if (i > 1)
        s = std::string(1, var) + "^" + std::to_string(i);
    if (with_y)
        s += s.empty() ? "y" : "*y";
    return s;
}

std::string join_terms(std::vector<Term> const& terms)
{
    if (terms.empty())
        return "0";
    std::string out;
    for (size_t k = 0; k < terms.size(); ++k) {
        auto const& [c, body] = terms[k];
        Rational const mag = abs(c);
        bool const neg = c < 0;
        std::string piece;
        if (body.empty())
            piece = format(mag);
        else if (mag == 1)
            piece = body;
        else
            piece = format(mag) + "*" + body;
        if (k == 0)
            out = (neg ? "-" : "") + piece;
        else
            out += (neg ? " - " : " + ") + piece;
    }
    return out;
}

std::vector<Term> poly_terms(Poly const& p, char var, bool with_y)
{
    std::vector<Term> t;
    for (int i = p.degree(); i >= 0; --i)
        if (p.coeff(i) != 0)
            t.push_back({ p.coeff(i), monomial_body(var, i, with_y) });
    return t;
}

bool is_atom(std::vector<Term> const& terms)
{
    return terms.size() == 1 && terms[0].c == 1 && terms[0].body.find('*') == std::string::npos
        && terms[0].body.find('^') == std::string::npos;
}

// Numerator terms over a monic denominator polynomial. A rational content
// b in the numerator's coefficients moves into the denominator, so that
// (1/2)/x prints as 1/(2*x).
std::string format_fraction(std::vector<Term> num, Poly const& den, char var)
{
    Integer lcm_den = 1, gcd_num = 0;
    for (auto const& t : num) {
        lcm_den = lcm(lcm_den, t.c.get_den());
        gcd_num = gcd(gcd_num, t.c.get_num());
    }
    Integer const b = den.is_one() || num.empty() ? Integer(1) : lcm_den;
    if (b != 1)
        for (auto& t : num)
            t.c *= b;
    std::string n = join_terms(num);
    if (den.is_one())
        return n;
    if (num.size() > 1)
        n = "(" + n + ")";
    auto const dt = poly_terms(den, var, false);
    std::string d = join_terms(dt);
    if (b != 1) {
        d = b.get_str() + "*" + (is_atom(dt) ? d : "(" + d + ")");
        return n + "/(" + d + ")";
    }
    if (!is_atom(dt))
        d = "(" + d + ")";
    return n + "/" + d;
}

// True when the printed function needs parentheses before "* dx".
bool is_sum(std::vector<Term> const& num, Poly const& den)
{
    return den.is_one() && num.size() > 1;
}

struct Printed {
    std::string text;
    bool sum = false;
};

Printed print_function(Function const& g)
{
    Curve const& c = g.curve();
    char const v = c.variable();
    if (!c.is_elliptic()) {
        auto const num = poly_terms(g.a().num(), v, false);
        return { format_fraction(num, g.a().den(), v), is_sum(num, g.a().den()) };
    }
    auto const can = g.canonical();
    auto num = poly_terms(can.q, v, true);
    auto const rest = poly_terms(can.p, v, false);
    num.insert(num.end(), rest.begin(), rest.end());
    return { format_fraction(num, can.d, v), is_sum(num, can.d) };
}

} // namespace

std::string format(Function const& g)
{
    return print_function(g).text;
}

std::string format(Differential const& w)
{
    Curve const& c = w.curve();
    std::string const base = c.is_elliptic() ? "dx" : "dt";
    if (w.is_zero())
        return "0";
    auto const& g = w.coefficient();
    auto with_base = [](Function const& h, std::string const& b) {
        if (h == Function::constant(h.curve(), 1))
            return b;
        if (h == Function::constant(h.curve(), -1))
            return "-" + b;
        auto const p = print_function(h);
        return (p.sum ? "(" + p.text + ")" : p.text) + " * " + b;
    };
    std::string text = with_base(g, base);
    if (c.is_elliptic()) {
        // h * dx/y with h = g y; used when it reads shorter.
        std::string alt = with_base(g * Function::y(c), "dx/y");
        if (alt.size() < text.size())
            text = std::move(alt);
    }
    return text;
}

std::string format(Curve const& c, Point const& P)
{
    return format_point(c, P);
}

std::string format(Curve const& c, Divisor const& D)
{
    return format_divisor(c, D);
}

// ---------------------------------------------------------------------
// Parsing

Rational parse_rational(std::string_view s)
{
    std::string str(s);
    while (!str.empty() && std::isspace(static_cast<unsigned char>(str.back())))
        str.pop_back();
    size_t b = 0;
    while (b < str.size() && std::isspace(static_cast<unsigned char>(str[b])))
        ++b;
    str = str.substr(b);
    if (!str.empty() && str[0] == '+')
        str = str.substr(1);
    bool ok = !str.empty();
    int slashes = 0;
    for (size_t i = 0; i < str.size() && ok; ++i) {
        char const ch = str[i];
        if (ch == '/')
            ok = ++slashes == 1 && i > 0 && i + 1 < str.size();
        else if (ch == '-')
            ok = i == 0;
        else
            ok = std::isdigit(static_cast<unsigned char>(ch));
    }
    if (!ok)
        throw input_error("malformed rational '" + std::string(s) + "'");
    Rational q;
    if (q.set_str(str, 10) != 0)
        throw input_error("malformed rational '" + std::string(s) + "'");
    if (q.get_den() == 0)
        throw input_error("zero denominator in '" + std::string(s) + "'");
    q.canonicalize();
    return q;
}

namespace {

std::string strip(std::string_view s)
{
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

} // namespace

Point parse_point(Curve const& c, std::string_view s)
{
    std::string const t = strip(s);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw input_error("malformed point '" + t + "'");
    std::string const inner = strip(std::string_view(t).substr(1, t.size() - 2));
    if (inner == "inf" || inner == "infinity" || inner == "∞")
        return Point::infinity();
    auto const comma = inner.find(',');
    Point P;
    if (c.is_elliptic()) {
        if (comma == std::string::npos)
            throw input_error("point '" + t + "' needs two coordinates");
        P = Point::affine(parse_rational(inner.substr(0, comma)), parse_rational(inner.substr(comma + 1)));
    } else {
        if (comma != std::string::npos)
            throw input_error("point '" + t + "' on a line takes one coordinate");
        P = Point::affine(parse_rational(inner));
    }
    if (!c.on_completion(P))
        throw input_error("point " + t + " does not lie on the curve");
    return P;
}

Divisor parse_divisor(Curve const& c, std::string_view s, bool allow_punctures)
{
    std::string const t = strip(s);
    if (t == "0" || t.empty())
        return {};
    Divisor D;
    size_t i = 0;
    auto skip = [&] {
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i])))
            ++i;
    };
    bool first = true;
    while (true) {
        skip();
        if (i >= t.size())
            break;
        int sign = 1;
        if (t[i] == '+' || t[i] == '-') {
            sign = t[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            throw input_error("expected '+' or '-' in divisor '" + t + "'");
        }
        long n = 1;
        if (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
            size_t j = i;
            while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j])))
                ++j;
            n = std::stol(t.substr(i, j - i));
            i = j;
            skip();
            if (i >= t.size() || t[i] != '*')
                throw input_error("expected '*' after coefficient in divisor '" + t + "'");
            ++i;
            skip();
        }
        if (i >= t.size() || t[i] != '(')
            throw input_error("expected a point in divisor '" + t + "'");
        auto const close = t.find(')', i);
        if (close == std::string::npos)
            throw input_error("unbalanced point in divisor '" + t + "'");
        Point const P = parse_point(c, t.substr(i, close - i + 1));
        if (!allow_punctures && c.is_puncture(P))
            throw input_error("divisor on X may not contain the puncture " + format_point(c, P));
        D.add(P, static_cast<int>(sign * n));
        i = close + 1;
        first = false;
    }
    return D;
}

namespace {

enum class Tok { num, var, lparen, rparen, plus, minus, star, slash, caret, end };

struct Token {
    Tok kind;
    std::string text;
};

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        unsigned char const ch = static_cast<unsigned char>(s[i]);
        if (std::isspace(ch)) {
            ++i;
        } else if (std::isdigit(ch)) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            out.push_back({ Tok::num, std::string(s.substr(i, j - i)) });
            i = j;
        } else if (std::isalpha(ch)) {
            size_t j = i;
            while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j])))
                ++j;
            out.push_back({ Tok::var, std::string(s.substr(i, j - i)) });
            i = j;
        } else if (s.substr(i, 3) == "∂") {
            out.push_back({ Tok::var, "d" });
            i += 3;
        } else {
            Tok k;
            switch (ch) {
            case '(': k = Tok::lparen; break;
            case ')': k = Tok::rparen; break;
            case '+': k = Tok::plus; break;
            case '-': k = Tok::minus; break;
            case '*': k = Tok::star; break;
            case '/': k = Tok::slash; break;
            case '^': k = Tok::caret; break;
            default:
                throw input_error("unexpected character '" + std::string(1, s[i]) + "' in '" + std::string(s) + "'");
            }
            out.push_back({ k, std::string(1, s[i]) });
            ++i;
        }
    }
    out.push_back({ Tok::end, "" });
    return out;
}

} // namespace

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view src) : src_(src), toks_(tokenize(src)) {}

    std::unique_ptr<ExprNode> parse()
    {
        auto e = expr();
        if (peek().kind != Tok::end)
            fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    Token const& peek() const { return toks_[pos_]; }
    Token const& next() { return toks_[pos_++]; }
    [[noreturn]] void fail(std::string const& why) const
    {
        throw input_error("malformed expression '" + std::string(src_) + "': " + why);
    }

    static std::unique_ptr<ExprNode> node(ExprNode::Kind k, std::unique_ptr<ExprNode> l = {},
        std::unique_ptr<ExprNode> r = {})
    {
        auto n = std::make_unique<ExprNode>();
        n->kind = k;
        n->l = std::move(l);
        n->r = std::move(r);
        return n;
    }

    std::unique_ptr<ExprNode> expr()
    {
        auto e = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            auto const k = next().kind == Tok::plus ? ExprNode::add : ExprNode::sub;
            e = node(k, std::move(e), term());
        }
        return e;
    }

    std::unique_ptr<ExprNode> term()
    {
        auto e = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            auto const k = next().kind == Tok::star ? ExprNode::mul : ExprNode::div;
            e = node(k, std::move(e), unary());
        }
        return e;
    }

    std::unique_ptr<ExprNode> unary()
    {
        if (peek().kind == Tok::minus) {
            next();
            return node(ExprNode::neg, unary());
        }
        if (peek().kind == Tok::plus) {
            next();
            return unary();
        }
        return power();
    }

    std::unique_ptr<ExprNode> power()
    {
        auto base = primary();
        if (peek().kind != Tok::caret)
            return base;
        next();
        int sign = 1;
        if (peek().kind == Tok::minus || peek().kind == Tok::plus) {
            sign = next().kind == Tok::minus ? -1 : 1;
        }
        if (peek().kind != Tok::num)
            fail("exponent must be an integer");
        auto const& digits = next().text;
        if (digits.size() > 6)
            fail("exponent too large");
        auto n = node(ExprNode::pow, std::move(base));
        n->exponent = sign * std::stoi(digits);
        return n;
    }

    std::unique_ptr<ExprNode> primary()
    {
        auto const& t = next();
        switch (t.kind) {
        case Tok::num: {
            auto n = node(ExprNode::num);
            n->value = Rational(Integer(t.text));
            return n;
        }
        case Tok::var: {
            auto n = node(ExprNode::var);
            n->name = t.text;
            return n;
        }
        case Tok::lparen: {
            auto e = expr();
            if (next().kind != Tok::rparen)
                fail("missing ')'");
            return e;
        }
        default:
            fail(t.kind == Tok::end ? "unexpected end" : "unexpected '" + t.text + "'");
        }
    }

    std::string_view src_;
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

// Value of degree 0 (a function) or 1 (a multiple of the base form).
struct FormValue {
    Function f;
    bool is_form = false;
};

FormValue eval_form(Curve const& c, ExprNode const& n, std::string_view src)
{
    auto bad = [&](std::string const& why) -> input_error {
        return input_error("in '" + std::string(src) + "': " + why);
    };
    switch (n.kind) {
    case ExprNode::num:
        return { Function::constant(c, n.value), false };
    case ExprNode::var: {
        auto const& v = n.name;
        if (!c.is_elliptic()) {
            if (v == "t")
                return { Function::coordinate(c), false };
            if (v == "dt")
                return { Function::constant(c, 1), true };
        } else {
            if (v == "x")
                return { Function::coordinate(c), false };
            if (v == "y")
                return { Function::y(c), false };
            if (v == "dx")
                return { Function::constant(c, 1), true };
            if (v == "dy") {
                // dy = f'(x)/(2y) dx
                Function const fp(c, RatFunc(c.cubic().derivative() * Rational(1, 2)));
                return { fp / Function::y(c), true };
            }
        }
        throw bad("unknown symbol '" + v + "' for this curve");
    }
    case ExprNode::neg: {
        auto v = eval_form(c, *n.l, src);
        return { -v.f, v.is_form };
    }
    case ExprNode::add:
    case ExprNode::sub: {
        auto a = eval_form(c, *n.l, src);
        auto b = eval_form(c, *n.r, src);
        if (a.is_form != b.is_form) {
            // "0" may stand for the zero form.
            if (a.is_form ? !b.f.is_zero() : !a.f.is_zero())
                throw bad("adding a function to a 1-form");
        }
        bool const form = a.is_form || b.is_form;
        return { n.kind == ExprNode::add ? a.f + b.f : a.f - b.f, form };
    }
    case ExprNode::mul: {
        auto a = eval_form(c, *n.l, src);
        auto b = eval_form(c, *n.r, src);
        if (a.is_form && b.is_form)
            throw bad("product of two 1-forms");
        return { a.f * b.f, a.is_form || b.is_form };
    }
    case ExprNode::div: {
        auto a = eval_form(c, *n.l, src);
        auto b = eval_form(c, *n.r, src);
        if (b.is_form)
            throw bad("division by a 1-form");
        if (b.f.is_zero())
            throw bad("division by zero");
        return { a.f / b.f, a.is_form };
    }
    case ExprNode::pow: {
        auto a = eval_form(c, *n.l, src);
        if (a.is_form && n.exponent != 1)
            throw bad("power of a 1-form");
        if (a.f.is_zero() && n.exponent < 0)
            throw bad("division by zero");
        return { a.f.pow(n.exponent), a.is_form };
    }
    }
    throw bad("unreachable");
}

} // namespace

std::unique_ptr<ExprNode> parse_expression_tree(std::string_view s)
{
    return ExprParser(s).parse();
}

Function parse_function(Curve const& c, std::string_view s)
{
    auto tree = parse_expression_tree(s);
    auto v = eval_form(c, *tree, s);
    if (v.is_form)
        throw input_error("expected a function, got a 1-form: '" + std::string(s) + "'");
    return v.f;
}

Differential parse_differential(Curve const& c, std::string_view s)
{
    auto tree = parse_expression_tree(s);
    auto v = eval_form(c, *tree, s);
    if (!v.is_form && !v.f.is_zero())
        throw input_error("expected a 1-form in dt/dx/dy, got a function: '" + std::string(s) + "'");
    return Differential(v.f);
}

Curve parse_curve_json(std::string_view json)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
    } catch (nlohmann::json::exception const& e) {
        throw input_error(std::string("curve spec is not valid JSON: ") + e.what());
    }
    auto rat = [](nlohmann::json const& v) -> Rational {
        if (v.is_string())
            return parse_rational(v.get<std::string>());
        if (v.is_number_integer())
            return Rational(v.get<long>());
        throw input_error("curve spec: rationals must be strings or integers");
    };
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw input_error("curve spec needs a \"kind\"");
    auto const kind = j["kind"].get<std::string>();
    CurveSpec spec;
    if (kind == "elliptic") {
        if (!j.contains("a") || !j.contains("b"))
            throw input_error("elliptic curve spec needs \"a\" and \"b\"");
        spec.kind = CurveKind::elliptic;
        spec.a = rat(j["a"]);
        spec.b = rat(j["b"]);
    } else if (kind == "punctured_line") {
        spec.kind = CurveKind::punctured_line;
        if (j.contains("punctures")) {
            if (!j["punctures"].is_array())
                throw input_error("\"punctures\" must be an array");
            for (auto const& p : j["punctures"])
                spec.punctures.push_back(rat(p));
        }
    } else {
        throw input_error("unknown curve kind '" + kind + "'");
    }
    return make_curve(spec);
}

std::string curve_to_json(Curve const& c)
{
    nlohmann::ordered_json j;
    if (c.is_elliptic()) {
        j["kind"] = "elliptic";
        j["a"] = format(c.a());
        j["b"] = format(c.b());
    } else {
        j["kind"] = "punctured_line";
        auto arr = nlohmann::ordered_json::array();
        for (auto const& p : c.punctures())
            arr.push_back(format(p));
        j["punctures"] = arr;
    }
    return j.dump();
}

} // namespace connexion
