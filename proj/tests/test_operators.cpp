#include "doctest.h"

#include "connexion/dmodule.hpp"
#include "connexion/error.hpp"
#include "connexion/ideal.hpp"
#include "connexion/text.hpp"

#include "gen.hpp"

using namespace connexion;

namespace {

Curve const E1 = Curve::elliptic(-1, 0);
Curve const L1 = Curve::punctured_line({ 0 });
Point const O = Point::affine(0, 0);

DiffOperator mul(Function const& g) { return DiffOperator::multiplication(g); }

} // namespace

TEST_CASE("composition in the Weyl-type algebra")
{
    auto const d = DiffOperator::derivation_power(L1, 1);
    auto const t = Function::coordinate(L1);
    CHECK(format(d * mul(t)) == "t*d + 1");
    auto const e = DiffOperator::derivation_power(E1, 1);
    auto const x = Function::coordinate(E1), y = Function::y(E1);
    CHECK(format(e * mul(x)) == "x*d + y");
    CHECK(commutator(e, mul(x)) == mul(y));
    CHECK((e * e).order() == 2);
    CHECK((e * e) == DiffOperator::derivation_power(E1, 2));
}

TEST_CASE("operators act as the composite of their parts")
{
    gen::Rng r(41);
    for (auto const& name : { "E1", "L2" }) {
        Instance const inst = bundled_instance(name);
        Sampler s(r.eng());
        for (int trial = 0; trial < 10; ++trial) {
            auto const a = s.op(inst, 2), b = s.op(inst, 1);
            Function const g = s.field_element(inst);
            CHECK((a * b).apply(g) == a.apply(b.apply(g)));
            CHECK((a + b).apply(g) == a.apply(g) + b.apply(g));
            CHECK(parse_operator(inst.curve, format(a)) == a);
        }
    }
}

TEST_CASE("phi on small examples")
{
    auto const t = Function::coordinate(L1);
    auto const d = DiffOperator::derivation_power(L1, 1);
    CHECK(format(phi(Differential::canonical_regular(L1), d)) == "d + 1");
    auto const x = Function::coordinate(E1), y = Function::y(E1);
    auto const e = DiffOperator::derivation_power(E1, 1);
    CHECK(phi(dlog(x), e) == e + mul(y / x));
    CHECK(phi(dlog(x), e * e) == (e + mul(y / x)) * (e + mul(y / x)));
    // phi is the identity on multiplication operators.
    CHECK(phi(dlog(x), mul(x)) == mul(x));
    CHECK(phi(dlog(t), mul(t)) == mul(t));
}

TEST_CASE("preservation of ideals")
{
    auto const I = ideal_of_divisor(E1, Divisor::point(O));
    auto const e = DiffOperator::derivation_power(E1, 1);
    CHECK_FALSE(preserves(e, I));
    CHECK(preserves(mul(Function::coordinate(E1)), I));
    auto const w = connection_form(E1, Divisor::point(O)).form;
    CHECK(preserves(phi(w, e), I));
}

TEST_CASE("connection operators")
{
    auto const cf = connection_form(E1, Divisor::point(O));
    for (int n = 1; n <= 3; ++n) {
        auto const res = verify_connection_operator(cf.form, Divisor::point(O), n);
        CHECK(res.ok);
        CHECK(res.order_bound == n);
    }
    auto const wrong = verify_connection_operator(Differential::zero(E1), Divisor::point(O), 1);
    CHECK_FALSE(wrong.ok);
    CHECK_FALSE(wrong.failure.empty());
}

TEST_CASE("operator parsing")
{
    auto const op = parse_operator(E1, "x*d^2 + y*d - 1");
    CHECK(op.order() == 2);
    CHECK(op.coefficient(0) == Function::constant(E1, -1));
    CHECK(parse_operator(E1, "∂") == DiffOperator::derivation_power(E1, 1));
    CHECK_THROWS_AS(parse_operator(E1, "x*d +"), input_error);
}
