#pragma once

#include "connexion/poly.hpp"

#include <optional>
#include <vector>

namespace connexion {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

// Solves A u = b exactly. Free variables are set to zero after reduction
// to row echelon form with pivots taken leftmost first, so the answer is
// deterministic in the column order. std::nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_linear(RationalMatrix A, std::vector<Rational> b);

int rank(RationalMatrix A);

// Row Hermite normal form of the lattice spanned by the rows: upper
// triangular, positive pivots, entries above each pivot reduced into
// [0, pivot). Zero rows are dropped.
IntegerMatrix hermite_normal_form(IntegerMatrix rows);

} // namespace connexion
