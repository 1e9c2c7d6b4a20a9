#pragma once

// Expression trees shared by the function, form and operator parsers.

#include "connexion/poly.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace connexion {

struct ExprNode {
    enum Kind { num, var, neg, add, sub, mul, div, pow } kind;
    Rational value;   // num
    std::string name; // var: t, x, y, dt, dx, dy or d
    int exponent = 0; // pow
    std::unique_ptr<ExprNode> l, r;
};

// Throws input_error on malformed text.
std::unique_ptr<ExprNode> parse_expression_tree(std::string_view s);

} // namespace connexion
