#pragma once

#include "connexion/differential.hpp"
#include "connexion/linalg.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace connexion {

enum class LatticeVerdict { complete, bounded_search_only };

// Lattice of v in Z^S with sum v_i P_i principal, in Hermite normal form.
struct RelationLattice {
    IntegerMatrix basis;
    LatticeVerdict verdict = LatticeVerdict::complete;
};

RelationLattice relation_lattice(Curve const& c, std::vector<Point> const& S, int bound);

// Form with simple pole of residue 1 at P, regular elsewhere on X.
Differential third_kind_basis(Curve const& c, Point const& P);

/* Splitting s: Div_S -> Omega3Z(X) with res o s = id and s(div f) = dlog f.
 *
 * The basis of Q^S consists of the relation lattice rows (s = dlog of
 * the witness) followed by unit vectors e_j completing them (s = the
 * third-kind form at S_j).
 */
struct SplittingContext {
    Curve curve;
    std::vector<Point> support;
    int bound = 0;
    RelationLattice lattice;
    std::vector<Function> witnesses;
    std::vector<size_t> complement;
    std::vector<Differential> complement_forms;
};

SplittingContext build_splitting(Curve const& c, std::vector<Point> const& S, int bound);
Differential split(SplittingContext const& ctx, Divisor const& D);

// D - deg(D) * (distinguished puncture), a degree zero divisor on the
// completion.
Divisor extend_divisor(Curve const& c, Divisor const& D);

std::string context_to_json(SplittingContext const& ctx);
// Validates every stored witness and form; throws input_error on a
// malformed or inconsistent document.
SplittingContext context_from_json(std::string_view json);

} // namespace connexion
