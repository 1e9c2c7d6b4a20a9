#pragma once

#include "connexion/differential.hpp"

#include <vector>

namespace connexion {

// Fractional ideal I_D = { g in K : v_P(g) >= -D(P) for all P in X },
// carried together with a generating set over O(X).
class FractionalIdeal {
public:
    FractionalIdeal(Curve curve, Divisor divisor, std::vector<Function> generators);

    Curve const& curve() const { return curve_; }
    Divisor const& divisor() const { return divisor_; }
    std::vector<Function> const& generators() const { return gens_; }
    bool is_unit_ideal() const { return divisor_.is_zero(); }

private:
    Curve curve_;
    Divisor divisor_;
    std::vector<Function> gens_;
};

FractionalIdeal ideal_of_divisor(Curve const& c, Divisor const& D);
FractionalIdeal ideal_mul(FractionalIdeal const& I, FractionalIdeal const& J);
FractionalIdeal ideal_inverse(FractionalIdeal const& I);

// g in I, decided over every point of X (rational or not).
bool membership(Function const& g, FractionalIdeal const& I);

// alpha_i in I, beta_i in J, sum alpha_i beta_i = 1.
struct BezoutSystem {
    std::vector<Function> alpha, beta;
};

// Requires I J = O(X). Deterministic in the generator order.
BezoutSystem bezout(FractionalIdeal const& I, FractionalIdeal const& J);

struct ConnectionForm {
    Differential form;
    BezoutSystem system;
};

// w = sum alpha_i d(beta_i) for a Bezout system of (I_D, I_{-D}); w has
// simple poles with residue D(P) at every P in supp D and is regular
// elsewhere on X.
ConnectionForm connection_form(Curve const& c, Divisor const& D);
// Same from explicitly given ideals (I J = O(X)).
ConnectionForm connection_form(FractionalIdeal const& I, FractionalIdeal const& J);

} // namespace connexion
