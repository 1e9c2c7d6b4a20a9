#include "connexion/connection.hpp"

#include "connexion/error.hpp"
#include "connexion/text.hpp"

namespace connexion {

ConnectionClass make_class(Differential const& w)
{
    return { res_map(w), w };
}

ConnectionClass embed_regular(Differential const& eta)
{
    if (!is_regular_on_X(eta))
        throw domain_error("embed_regular: form has a pole on X");
    return { Divisor{}, eta };
}

ConnectionClass tensor(ConnectionClass const& c1, ConnectionClass const& c2)
{
    if (c1.form.curve() != c2.form.curve())
        throw domain_error("tensor: classes live on different curves");
    return { c1.divisor + c2.divisor, c1.form + c2.form };
}

ConnectionClass gauge(ConnectionClass const& c, Function const& f)
{
    if (f.is_zero())
        throw domain_error("gauge by the zero function");
    return { c.divisor + divisor_of(f), c.form + dlog(f) };
}

ClassEquality equals(ConnectionClass const& c1, ConnectionClass const& c2)
{
    Curve const& c = c1.form.curve();
    if (c2.form.curve() != c)
        throw domain_error("equals: classes live on different curves");
    ClassEquality out;
    auto const cert = is_principal(c, c1.divisor - c2.divisor);
    if (cert.verdict != Verdict::principal) {
        out.reason = "divisor classes differ";
        if (cert.obstruction)
            out.reason += " (sum " + format(c, *cert.obstruction) + ")";
        return out;
    }
    Function const f = *cert.witness;
    out.principal_witness = f;
    Differential eta = c1.form - c2.form - dlog(f);
    if (eta.is_zero()) {
        out.equal = true;
        return out;
    }
    // Units of O(X) are constants times products of the unit generators;
    // the exponent of each generator is read off from the residue at its
    // puncture.
    auto const gens = units(c).generators;
    if (gens.empty()) {
        out.reason = "forms differ by a nonzero element outside dlog K*";
        return out;
    }
    Function u = Function::constant(c, 1);
    auto const pts = c.completion_punctures();
    for (size_t i = 0; i < gens.size(); ++i) {
        Rational const k = residue(eta, pts[i]);
        if (k.get_den() != 1) {
            out.reason = "non-integer residue " + format(k) + " at puncture " + format(c, pts[i]);
            return out;
        }
        long const e = k.get_num().get_si();
        if (e != 0)
            u *= gens[i].pow(static_cast<int>(e));
    }
    if (eta != dlog(u)) {
        out.reason = "forms differ by a nonzero element outside dlog of units";
        return out;
    }
    out.equal = true;
    out.unit_witness = u;
    return out;
}

bool PicClass::is_trivial() const
{
    return is_principal(curve_, rep_).verdict == Verdict::principal;
}

bool operator==(PicClass const& a, PicClass const& b)
{
    if (a.curve_ != b.curve_)
        return false;
    return is_principal(a.curve_, a.rep_ - b.rep_).verdict == Verdict::principal;
}

PicClass operator+(PicClass const& a, PicClass const& b)
{
    if (a.curve_ != b.curve_)
        throw domain_error("adding Pic classes of different curves");
    return { a.curve_, a.rep_ + b.rep_ };
}

PicClass project(ConnectionClass const& c)
{
    return { c.form.curve(), c.divisor };
}

} // namespace connexion
