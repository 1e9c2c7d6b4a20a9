#pragma once

#include "connexion/ideal.hpp"

#include <optional>
#include <string>

namespace connexion {

// Representative (D, w) of a class in Pic-flat X = Omega3Z(X) / dlog K*,
// with res_map(w) = D.
struct ConnectionClass {
    Divisor divisor;
    Differential form;
};

// (res_map(w), w); throws domain_error if w is not in Omega3Z(X).
ConnectionClass make_class(Differential const& w);
// (0, eta) for eta regular on X.
ConnectionClass embed_regular(Differential const& eta);
ConnectionClass tensor(ConnectionClass const& c1, ConnectionClass const& c2);
// (D + div f, w + dlog f)
ConnectionClass gauge(ConnectionClass const& c, Function const& f);

struct ClassEquality {
    bool equal = false;
    // f with div f = D1 - D2 (present whenever the divisor classes agree).
    std::optional<Function> principal_witness;
    // Unit u of O(X) with w1 - w2 = dlog f + dlog u, when u is not constant.
    std::optional<Function> unit_witness;
    std::string reason;
};

ClassEquality equals(ConnectionClass const& c1, ConnectionClass const& c2);

// Image in Pic X: the divisor, with equality decided by principality of
// differences.
class PicClass {
public:
    PicClass(Curve curve, Divisor rep) : curve_(std::move(curve)), rep_(std::move(rep)) {}
    Curve const& curve() const { return curve_; }
    Divisor const& representative() const { return rep_; }
    bool is_trivial() const;
    friend bool operator==(PicClass const& a, PicClass const& b);
    friend PicClass operator+(PicClass const& a, PicClass const& b);

private:
    Curve curve_;
    Divisor rep_;
};

PicClass project(ConnectionClass const& c);

} // namespace connexion
