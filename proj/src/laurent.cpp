#include "connexion/laurent.hpp"

#include "connexion/error.hpp"

#include <algorithm>
#include <sstream>

namespace connexion {

namespace {

// Precisions at or above half of `exact` stand for "no truncation".
int sat_add(int a, int b)
{
    if (a >= LaurentSeries::exact / 2 || b >= LaurentSeries::exact / 2)
        return LaurentSeries::exact;
    return a + b;
}

} // namespace

LaurentSeries::LaurentSeries(int val, std::vector<Rational> coeffs, int prec)
    : val_(val)
    , c_(std::move(coeffs))
    , prec_(prec)
{
    if (!is_exact() && val_ + static_cast<int>(c_.size()) > prec_)
        c_.resize(static_cast<size_t>(std::max(0, prec_ - val_)));
    normalize();
}

void LaurentSeries::normalize()
{
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0)
        ++lead;
    if (lead == c_.size()) {
        c_.clear();
        val_ = prec_;
        return;
    }
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
        val_ += static_cast<int>(lead);
    }
    if (is_exact())
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
}

LaurentSeries LaurentSeries::constant(Rational const& c, int prec)
{
    return LaurentSeries(0, { c }, prec);
}

LaurentSeries LaurentSeries::monomial(Rational const& c, int k)
{
    return LaurentSeries(k, { c }, exact);
}

LaurentSeries LaurentSeries::from_poly(Poly const& p)
{
    return LaurentSeries(0, p.coeffs(), exact);
}

int LaurentSeries::relative_precision() const
{
    if (is_exact())
        return exact;
    return prec_ - val_;
}

Rational LaurentSeries::coeff(int k) const
{
    if (k >= prec_)
        throw domain_error("coefficient beyond series precision");
    if (k < val_ || k >= val_ + static_cast<int>(c_.size()))
        return 0;
    return c_[static_cast<size_t>(k - val_)];
}

LaurentSeries LaurentSeries::operator-() const
{
    LaurentSeries r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

LaurentSeries operator+(LaurentSeries const& a, LaurentSeries const& b)
{
    if (a.is_zero_to_precision() && a.is_exact())
        return b;
    if (b.is_zero_to_precision() && b.is_exact())
        return a;
    int const prec = std::min(a.prec_, b.prec_);
    int const lo = std::min(a.val_, b.val_);
    int hi = std::max(a.val_ + static_cast<int>(a.c_.size()), b.val_ + static_cast<int>(b.c_.size()));
    hi = std::min(hi, prec);
    std::vector<Rational> c(static_cast<size_t>(std::max(0, hi - lo)), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        int const k = a.val_ + static_cast<int>(i);
        if (k < hi)
            c[static_cast<size_t>(k - lo)] += a.c_[i];
    }
    for (size_t i = 0; i < b.c_.size(); ++i) {
        int const k = b.val_ + static_cast<int>(i);
        if (k < hi)
            c[static_cast<size_t>(k - lo)] += b.c_[i];
    }
    return LaurentSeries(lo, std::move(c), prec);
}

LaurentSeries operator*(LaurentSeries const& a, LaurentSeries const& b)
{
    int const prec = std::min(sat_add(a.val_, b.prec_), sat_add(b.val_, a.prec_));
    if (a.c_.empty() || b.c_.empty())
        return LaurentSeries(prec, {}, prec);
    int const lo = a.val_ + b.val_;
    int hi = a.val_ + static_cast<int>(a.c_.size()) + b.val_ + static_cast<int>(b.c_.size()) - 1;
    hi = std::min(hi, prec);
    std::vector<Rational> c(static_cast<size_t>(std::max(0, hi - lo)), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            size_t const k = i + j;
            if (static_cast<int>(k) >= hi - lo)
                break;
            c[k] += a.c_[i] * b.c_[j];
        }
    }
    return LaurentSeries(lo, std::move(c), prec);
}

LaurentSeries operator*(LaurentSeries const& a, Rational const& s)
{
    if (s == 0)
        return LaurentSeries(a.prec_, {}, a.prec_);
    LaurentSeries r = a;
    for (auto& c : r.c_)
        c *= s;
    return r;
}

LaurentSeries LaurentSeries::inverse(int rel) const
{
    if (c_.empty())
        throw domain_error("inverse of a series with no known nonzero coefficient");
    int const n = is_exact() ? rel : std::min(rel, prec_ - val_);
    std::vector<Rational> inv(static_cast<size_t>(std::max(n, 0)));
    if (n <= 0)
        return LaurentSeries(-val_, {}, -val_);
    Rational const l = 1 / c_[0];
    inv[0] = l;
    for (int k = 1; k < n; ++k) {
        Rational s = 0;
        int const top = std::min(k, static_cast<int>(c_.size()) - 1);
        for (int i = 1; i <= top; ++i)
            s += c_[static_cast<size_t>(i)] * inv[static_cast<size_t>(k - i)];
        inv[static_cast<size_t>(k)] = -s * l;
    }
    return LaurentSeries(-val_, std::move(inv), -val_ + n);
}

LaurentSeries LaurentSeries::derivative() const
{
    std::vector<Rational> d;
    d.reserve(c_.size());
    for (size_t i = 0; i < c_.size(); ++i)
        d.push_back(c_[i] * (val_ + static_cast<int>(i)));
    int const prec = is_exact() ? exact : prec_ - 1;
    return LaurentSeries(val_ - 1, std::move(d), prec);
}

LaurentSeries LaurentSeries::truncated(int prec) const
{
    if (prec >= prec_)
        return *this;
    return LaurentSeries(val_, c_, prec);
}

LaurentSeries LaurentSeries::compose_poly(Poly const& p) const
{
    LaurentSeries acc;
    auto const& cs = p.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it)
        acc = acc * *this + constant(*it);
    return acc;
}

bool LaurentSeries::agrees_with(LaurentSeries const& o) const
{
    int const prec = std::min(prec_, o.prec_);
    int const lo = std::min(val_, o.val_);
    int const hi = std::min(prec, std::max(val_ + static_cast<int>(c_.size()), o.val_ + static_cast<int>(o.c_.size())));
    for (int k = lo; k < hi; ++k)
        if (coeff(k) != o.coeff(k))
            return false;
    return true;
}

std::string LaurentSeries::to_string(std::string const& var) const
{
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        Rational c = c_[i];
        if (c == 0)
            continue;
        int const k = val_ + static_cast<int>(i);
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0)
                c = -c;
        }
        first = false;
        if (k == 0) {
            os << c.get_str();
        } else {
            if (c != 1)
                os << c.get_str() << "*";
            os << var;
            if (k != 1)
                os << "^" << k;
        }
    }
    if (!is_exact()) {
        if (!first)
            os << " + ";
        os << "O(" << var;
        if (prec_ != 1)
            os << "^" << prec_;
        os << ")";
    } else if (first) {
        os << "0";
    }
    return os.str();
}

LaurentSeries series_sqrt(LaurentSeries const& F, Rational const& root0, int n)
{
    if (F.valuation() != 0 || F.leading() != root0 * root0 || root0 == 0)
        throw domain_error("series_sqrt: F(0) must be a nonzero square");
    int const m = F.is_exact() ? n : std::min(n, F.precision());
    std::vector<Rational> y(static_cast<size_t>(m));
    Rational const inv2 = 1 / (2 * root0);
    y[0] = root0;
    for (int k = 1; k < m; ++k) {
        Rational s = F.coeff(k);
        for (int i = 1; i < k; ++i)
            s -= y[static_cast<size_t>(i)] * y[static_cast<size_t>(k - i)];
        y[static_cast<size_t>(k)] = s * inv2;
    }
    return LaurentSeries(0, std::move(y), m);
}

} // namespace connexion
