#include "connexion/samples.hpp"

#include "connexion/error.hpp"
#include "connexion/splitting.hpp"

namespace connexion {

std::vector<Instance> bundled_instances()
{
    auto const e1 = Curve::elliptic(-1, 0);
    auto const e2 = Curve::elliptic(0, -2);
    auto const l1 = Curve::punctured_line({ 0 });
    auto const l2 = Curve::punctured_line({ 0, 1 });
    return {
        { "E1", e1, { Point::affine(0, 0), Point::affine(1, 0), Point::affine(-1, 0) } },
        { "E2", e2, { Point::affine(3, 5), Point::affine(3, -5) } },
        { "L1", l1, { Point::affine(1), Point::affine(2), Point::affine(-3), Point::affine(Rational(1, 2)) } },
        { "L2", l2, { Point::affine(-1), Point::affine(2), Point::affine(3), Point::affine(Rational(-1, 2)) } },
    };
}

Instance bundled_instance(std::string const& name)
{
    for (auto& inst : bundled_instances())
        if (inst.name == name)
            return inst;
    throw domain_error("no bundled instance named " + name);
}

int Sampler::integer(int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

Rational Sampler::small_rational()
{
    Rational q(integer(-5, 5), integer(1, 3));
    q.canonicalize();
    return q;
}

std::vector<Function> Sampler::factor_pool(Instance const& inst)
{
    Curve const& c = inst.curve;
    std::vector<Function> pool;
    if (!c.is_elliptic()) {
        for (auto const& P : inst.points)
            pool.emplace_back(c, RatFunc(Poly::linear(P.x())));
        for (auto const& a : c.punctures())
            pool.emplace_back(c, RatFunc(Poly::linear(a)));
        return pool;
    }
    Function const x = Function::coordinate(c), y = Function::y(c);
    for (size_t i = 0; i < inst.points.size(); ++i) {
        auto const& P = inst.points[i];
        Function const vert = x - Function::constant(c, P.x());
        if (std::find(pool.begin(), pool.end(), vert) == pool.end())
            pool.push_back(vert);
        for (size_t j = i; j < inst.points.size(); ++j) {
            auto const& Q = inst.points[j];
            Rational lambda;
            if (P.x() != Q.x())
                lambda = (Q.y() - P.y()) / (Q.x() - P.x());
            else if (P == Q && P.y() != 0)
                lambda = (3 * P.x() * P.x() + c.a()) / (2 * P.y());
            else
                continue;
            Function const line = y - Function::constant(c, P.y()) - (x - Function::constant(c, P.x())) * lambda;
            if (std::find(pool.begin(), pool.end(), line) == pool.end())
                pool.push_back(line);
        }
    }
    if (std::find(pool.begin(), pool.end(), y) == pool.end())
        pool.push_back(y);
    // Keep only factors whose zeros are all rational (y qualifies when f
    // splits, lines always do).
    std::erase_if(pool, [](Function const& g) {
        try {
            divisor_of(g);
            return false;
        } catch (unsupported_error const&) {
            return true;
        }
    });
    return pool;
}

Function Sampler::function(Instance const& inst, int max_factors)
{
    auto const pool = factor_pool(inst);
    Function g = Function::constant(inst.curve, 0);
    while (g.is_zero())
        g = Function::constant(inst.curve, small_rational());
    int const up = integer(0, max_factors), down = integer(0, max_factors);
    for (int i = 0; i < up; ++i)
        g *= pool[static_cast<size_t>(integer(0, static_cast<int>(pool.size()) - 1))];
    for (int i = 0; i < down; ++i)
        g /= pool[static_cast<size_t>(integer(0, static_cast<int>(pool.size()) - 1))];
    return g;
}

Function Sampler::field_element(Instance const& inst)
{
    Curve const& c = inst.curve;
    auto poly = [&](int deg) {
        std::vector<Rational> v;
        for (int i = 0; i <= deg; ++i)
            v.push_back(Rational(integer(-3, 3)));
        return Poly(std::move(v));
    };
    Poly den = poly(integer(0, 2));
    while (den.is_zero())
        den = poly(integer(0, 2));
    RatFunc const a(poly(integer(0, 2)), den);
    if (!c.is_elliptic())
        return Function(c, a);
    return Function(c, a, RatFunc(poly(integer(0, 1))));
}

Divisor Sampler::divisor(Instance const& inst, int points, int max_coef)
{
    Divisor D;
    int const n = integer(1, std::min(points, static_cast<int>(inst.points.size())));
    std::vector<size_t> idx(inst.points.size());
    for (size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng_);
    for (int i = 0; i < n; ++i)
        D.add(inst.points[idx[static_cast<size_t>(i)]], integer(-max_coef, max_coef));
    return D;
}

Differential Sampler::regular_form(Instance const& inst)
{
    Curve const& c = inst.curve;
    if (c.is_elliptic()) {
        // h * dx/y with h a polynomial in x, y.
        Function h(c, RatFunc(Poly({ small_rational(), small_rational() })), RatFunc(Poly(small_rational())));
        return Differential::from_pairing(h);
    }
    Function h(c, RatFunc(Poly({ small_rational(), small_rational() })));
    for (auto const& a : c.punctures()) {
        int const k = integer(0, 2);
        if (k > 0)
            h += Function(c, RatFunc(Poly(small_rational()), Poly::linear(a).pow(static_cast<unsigned>(k))));
    }
    return Differential(h);
}

Differential Sampler::third_kind_form(Instance const& inst)
{
    Curve const& c = inst.curve;
    Differential w = regular_form(inst);
    if (integer(0, 1))
        w += dlog(function(inst));
    for (auto const& P : inst.points) {
        int const n = integer(-2, 2);
        if (n != 0)
            w += Rational(n) * third_kind_basis(c, P);
    }
    return w;
}

DiffOperator Sampler::op(Instance const& inst, int order)
{
    std::vector<Function> g;
    for (int i = 0; i <= order; ++i)
        g.push_back(field_element(inst));
    return DiffOperator(inst.curve, std::move(g));
}

} // namespace connexion
