#include "doctest.h"

#include "connexion/divisor.hpp"
#include "connexion/error.hpp"
#include "connexion/text.hpp"

#include <set>

#include "gen.hpp"
#include "oracles.hpp"

using namespace connexion;

namespace {

Curve const E1 = Curve::elliptic(-1, 0);
Curve const E2 = Curve::elliptic(0, -2);
Curve const L1 = Curve::punctured_line({ 0 });

Function k(Curve const& c, Rational v) { return Function::constant(c, v); }

} // namespace

TEST_CASE("curve basics")
{
    CHECK(E1.contains(Point::affine(1, 0)));
    CHECK_FALSE(E1.contains(Point::affine(2, 1)));
    CHECK(E1.discriminant() != 0);
    CHECK(E1.distinguished_puncture().is_infinity());
    CHECK(L1.is_puncture(Point::affine(0)));
    CHECK(L1.distinguished_puncture() == Point::affine(0));
    CHECK(Curve::punctured_line({}).distinguished_puncture().is_infinity());
    CHECK(E2.points_over(3).size() == 2);
    CHECK(E2.involution(Point::affine(3, 5)) == Point::affine(3, -5));
    CHECK_THROWS_AS(Curve::elliptic(0, 0), input_error);
}

TEST_CASE("function field arithmetic")
{
    auto const x = Function::coordinate(E1), y = Function::y(E1);
    CHECK(y * y == x * x * x - x);
    CHECK((y / x) * x == y);
    CHECK(y.inverse() * y == k(E1, 1));
    CHECK(y.conjugate() == -y);
    CHECK(y.norm() == RatFunc(E1.cubic()) * RatFunc(-1));
    auto const g = (y + x) / (x - k(E1, 2));
    auto const c = g.canonical();
    CHECK(c.d == Poly::linear(2));
    CHECK((y / x).in_coordinate_ring() == false);
    CHECK((x * y + k(E1, 1)).in_coordinate_ring());
}

TEST_CASE("derivation")
{
    auto const x = Function::coordinate(E1), y = Function::y(E1);
    Derivation const d = distinguished_derivation(E1);
    // d = y d/dx on y^2 = x^3 - x.
    CHECK(d(x) == y);
    CHECK(d(y) == (k(E1, 3) * x * x - k(E1, 1)) * Rational(1, 2));
    // Leibniz on a few products.
    auto const f = x / (x + k(E1, 1)), g = y * x;
    CHECK(d(f * g) == d(f) * g + f * d(g));
    auto const t = Function::coordinate(L1);
    CHECK(distinguished_derivation(L1)(t * t) == k(L1, 2) * t);
}

TEST_CASE("valuations agree with the norm")
{
    gen::Rng r(11);
    for (auto const& inst : bundled_instances()) {
        if (!inst.curve.is_elliptic())
            continue;
        Curve const& c = inst.curve;
        for (int trial = 0; trial < 25; ++trial) {
            Function const g = gen::rational_divisor_function(r, inst);
            for (auto const& P : inst.points) {
                int const n = oracle::norm_order(g, P.x());
                if (P.y() == 0)
                    CHECK(valuation(g, P) == n);
                else
                    CHECK(valuation(g, P) + valuation(g, c.involution(P)) == n);
            }
            CHECK(valuation(g, Point::infinity()) == oracle::norm_order_infinity(g));
            CHECK(completion_divisor_of(g).degree() == 0);
        }
    }
}

TEST_CASE("valuations on a line are root multiplicities")
{
    gen::Rng r(12);
    for (int trial = 0; trial < 40; ++trial) {
        Function const g = gen::rational_divisor_function(r, bundled_instance("L1"));
        for (int a = -3; a <= 3; ++a)
            CHECK(valuation(g, Point::affine(a)) == oracle::ord(g.a(), a));
        CHECK(valuation(g, Point::infinity()) == g.a().order_at_infinity());
    }
}

TEST_CASE("local expansions")
{
    auto const x = Function::coordinate(E1), y = Function::y(E1);
    auto const O = Point::affine(0, 0);
    CHECK(valuation(y, O) == 1);
    CHECK(valuation(x, O) == 2);
    CHECK(local_expansion(x, O, 2).to_string() == "-z^2 + O(z^4)");
    auto const x4 = local_expansion(x, O, 4);
    CHECK(x4.precision() >= 4);
    CHECK(x4.coeff(2) == -1);
    CHECK(x4.coeff(3) == 0);
    CHECK(local_expansion(x - k(E1, 1), Point::affine(1, 0), 1).to_string() == "1/2*z^2 + O(z^3)");
    auto const t = Function::coordinate(L1);
    CHECK(local_expansion(t / (t - k(L1, 3)), Point::affine(3), 2).to_string() == "3*z^-1 + 1 + O(z)");
    CHECK(valuation(x, Point::infinity()) == -2);
    CHECK(valuation(y, Point::infinity()) == -3);
    CHECK(valuation(k(E1, 0), O) == valuation_infinity);
}

TEST_CASE("divisors of functions")
{
    auto const x = Function::coordinate(E1), y = Function::y(E1);
    auto const O = Point::affine(0, 0), A = Point::affine(1, 0), B = Point::affine(-1, 0);
    CHECK(divisor_of(y) == Divisor{ { O, 1 }, { A, 1 }, { B, 1 } });
    CHECK(divisor_of(x) == Divisor::point(O, 2));
    CHECK(completion_divisor_of(x) == Divisor{ { O, 2 }, { Point::infinity(), -2 } });
    // x^3 - 2 has no rational root.
    auto const E2y = Function::y(E2);
    CHECK_THROWS_AS(divisor_of(E2y), unsupported_error);
}

TEST_CASE("two-torsion of E1 is Z/2 x Z/2")
{
    // Exhaustive: the map (a, b) -> a P + b Q over Z/2 x Z/2 must be a
    // bijection onto {inf, (0,0), (1,0), (-1,0)} and a homomorphism.
    Point const T[4] = { Point::infinity(), Point::affine(0, 0), Point::affine(1, 0), Point::affine(-1, 0) };
    auto image = [&](int a, int b) {
        return ell_add(E1, ell_mul(E1, a, T[1]), ell_mul(E1, b, T[2]));
    };
    std::set<Point> seen;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            seen.insert(image(a, b));
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    CHECK(ell_add(E1, image(a, b), image(c, d)) == image((a + c) % 2, (b + d) % 2));
        }
    CHECK(seen == std::set<Point>(T, T + 4));
    for (auto const& P : T)
        CHECK(torsion_order(E1, P) == (P.is_infinity() ? 1 : 2));
}

TEST_CASE("group law on E2")
{
    auto const P = Point::affine(3, 5);
    CHECK(torsion_order(E2, P) == 0);
    auto const Q = ell_mul(E2, 2, P);
    CHECK(E2.contains(Q));
    CHECK(ell_add(E2, P, P) == Q);
    CHECK(ell_add(E2, Q, ell_neg(E2, Q)).is_infinity());
    CHECK(ell_mul(E2, 3, P) == ell_add(E2, Q, P));
}

TEST_CASE("principality")
{
    auto const O = Point::affine(0, 0), A = Point::affine(1, 0);
    auto cert = is_principal(E1, Divisor::point(O, 2));
    CHECK(cert.verdict == Verdict::principal);
    REQUIRE(cert.witness);
    CHECK(divisor_of(*cert.witness) == Divisor::point(O, 2));
    cert = is_principal(E1, Divisor{ { O, 1 }, { A, -1 } });
    CHECK(cert.verdict == Verdict::not_principal);
    CHECK(cert.obstruction.has_value());
    auto const P = Point::affine(3, 5);
    Divisor const D{ { P, 3 }, { ell_mul(E2, 3, P), -1 } };
    CHECK(divisor_of(function_with_divisor(E2, D)) == D);
    // Every divisor on a punctured line is principal.
    CHECK(is_principal(L1, Divisor{ { Point::affine(2), 3 } }).verdict == Verdict::principal);
}

TEST_CASE("text round trip")
{
    gen::Rng r(5);
    for (auto const& inst : bundled_instances()) {
        Sampler s(r.eng());
        for (int i = 0; i < 10; ++i) {
            Function const g = s.field_element(inst);
            CHECK(parse_function(inst.curve, format(g)) == g);
            Divisor const D = s.divisor(inst, 3, 3);
            CHECK(parse_divisor(inst.curve, format(inst.curve, D)) == D);
        }
    }
    CHECK(format(Function::y(E1) / Function::coordinate(E1)) == "y/x");
    CHECK(format(E1, Divisor{ { Point::affine(0, 0), 1 }, { Point::affine(1, 0), -2 } }) == "1*(0,0) - 2*(1,0)");
    CHECK(format(E1, Point::infinity()) == "(inf)");
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK_THROWS_AS(parse_function(E1, "x +"), input_error);
    CHECK_THROWS_AS(parse_point(E1, "(2,1)"), input_error);
    CHECK(parse_curve_json(curve_to_json(E2)) == E2);
}
