#pragma once

#include "connexion/differential.hpp"

#include <string>
#include <string_view>

namespace connexion {

/* Textual forms of exact objects. Everything printed here parses back
 * to an equal value with the matching parse_* function.
 *
 *   rational     "3", "-1/2"
 *   point        "(0,0)", "(3/2)" on a line, "(inf)"
 *   divisor      "1*(0,0) - 2*(1,0)", "0" for the zero divisor
 *   function     arithmetic in t (line) or x, y (elliptic): + - * / and
 *                ^ with an integer exponent; "-x^2" is -(x^2)
 *   form         an expression of degree one in dt (or dx, dy), e.g.
 *                "1/x * dx", "dt/t"; dy is rewritten as f'(x)/(2y) dx
 */

std::string format(Rational const& q);
std::string format(Curve const& c, Point const& P);
std::string format(Curve const& c, Divisor const& D);
std::string format(Function const& g);
std::string format(Differential const& w);

Rational parse_rational(std::string_view s);
Point parse_point(Curve const& c, std::string_view s);
// Points must lie on X unless allow_punctures is set.
Divisor parse_divisor(Curve const& c, std::string_view s, bool allow_punctures = false);
Function parse_function(Curve const& c, std::string_view s);
Differential parse_differential(Curve const& c, std::string_view s);

// {"kind":"elliptic","a":"-1","b":"0"} or
// {"kind":"punctured_line","punctures":["0"]}
Curve parse_curve_json(std::string_view json);
std::string curve_to_json(Curve const& c);

} // namespace connexion
