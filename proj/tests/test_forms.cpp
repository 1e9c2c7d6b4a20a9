#include "doctest.h"

#include "connexion/differential.hpp"
#include "connexion/divisor.hpp"
#include "connexion/error.hpp"
#include "connexion/splitting.hpp"
#include "connexion/text.hpp"

#include "gen.hpp"
#include "oracles.hpp"

using namespace connexion;

namespace {

Curve const E1 = Curve::elliptic(-1, 0);
Curve const L1 = Curve::punctured_line({ 0 });

} // namespace

TEST_CASE("canonical forms and pairing")
{
    auto const w = Differential::canonical_regular(E1);
    Derivation const d = distinguished_derivation(E1);
    CHECK(pairing(w, d) == Function::constant(E1, 1));
    CHECK(is_regular_on_X(w));
    CHECK(form_order(w, Point::affine(0, 0)) == 0);
    // genus one: dx/y has no zeros at all.
    CHECK(form_order(w, Point::infinity()) == 0);
    auto const x = Function::coordinate(E1);
    CHECK(Differential::exact(x) == Differential(Function::constant(E1, 1)));
    CHECK(Differential::from_pairing(x) == x * w);
    CHECK(pairing(Differential::canonical_regular(L1), distinguished_derivation(L1)) == Function::constant(L1, 1));
}

TEST_CASE("dlog and residues of small examples")
{
    auto const x = Function::coordinate(E1), y = Function::y(E1);
    auto const O = Point::affine(0, 0);
    CHECK(residue(dlog(x), O) == 2);
    CHECK(residue(dlog(x), Point::infinity()) == -2);
    CHECK(residue(Differential(y.inverse()), O) == 0);
    CHECK(res_map(dlog(y)) == divisor_of(y));
    CHECK(total_residue_completion(dlog(x)) == 0);
    auto const t = Function::coordinate(L1);
    auto const w = dlog(t - Function::constant(L1, 2));
    CHECK(res_map(w) == Divisor::point(Point::affine(2)));
    CHECK(residue(w, Point::infinity()) == -1);
    CHECK(poles_on_X(w) == std::vector<Point>{ Point::affine(2) });
    CHECK(format(dlog(x)) == "1/x * dx");
}

TEST_CASE("line residues match partial fractions")
{
    gen::Rng r(21);
    for (auto const& inst : { bundled_instance("L1"), bundled_instance("L2") }) {
        Curve const& c = inst.curve;
        for (int trial = 0; trial < 40; ++trial) {
            Function g = Function::constant(c, r.nonzero());
            std::vector<Rational> poles;
            for (int i = 0; i < 3; ++i) {
                Rational const a = r.rational(3, 2);
                poles.push_back(a);
                g += Function(c, RatFunc(Poly(r.rational()), Poly::linear(a).pow(static_cast<unsigned>(r.range(1, 3)))));
            }
            Differential const w(g);
            for (auto const& a : poles)
                CHECK(residue(w, Point::affine(a)) == oracle::line_residue(g.a(), a));
        }
    }
}

TEST_CASE("elliptic residues match contour integrals")
{
    gen::Rng r(22);
    for (auto const& inst : { bundled_instance("E1"), bundled_instance("E2") }) {
        Sampler s(r.eng());
        for (int trial = 0; trial < 12; ++trial) {
            Differential const w = s.third_kind_form(inst);
            for (auto const& P : inst.points) {
                // Radius well inside the distance to the other poles.
                double const rad = P.y() == 0 ? 0.2 : 0.3;
                auto const z = oracle::elliptic_residue(w.coefficient(), P, rad);
                CHECK(std::abs(z - oracle::cplx(residue(w, P).get_d(), 0)) < 1e-9);
            }
        }
    }
}

TEST_CASE("third-kind membership")
{
    auto const x = Function::coordinate(E1);
    auto const O = Point::affine(0, 0);
    CHECK(poles_on_X(dlog(x)) == std::vector<Point>{ O });
    // dx/x^2 has a triple pole at (0,0), where x has order 2.
    Differential const bad(x.pow(-2));
    CHECK_THROWS_AS(res_map(bad), domain_error);
    // residue 1/2 at (0,0) is not integral.
    Differential const half(x.inverse() * Rational(1, 4));
    CHECK_THROWS_AS(res_map(half), domain_error);
    auto const tk = third_kind_basis(E1, Point::affine(1, 0));
    CHECK(res_map(tk) == Divisor::point(Point::affine(1, 0)));
}

TEST_CASE("residue sign at infinity is load bearing")
{
    auto const x = Function::coordinate(E1);
    ResidueOptions flip;
    flip.negate_at_infinity = true;
    CHECK(total_residue_completion(dlog(x)) == 0);
    CHECK(total_residue_completion(dlog(x), flip) == 4);
}
