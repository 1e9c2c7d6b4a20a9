#pragma once

#include "connexion/poly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace connexion {

enum class CurveKind { punctured_line, elliptic };

/* A Q-rational point of the completion of X: either an affine point or
 * the point at infinity. On a punctured line only x() is meaningful and
 * y() is zero; whether an affine point is a puncture depends on the
 * curve, see Curve::is_puncture.
 */
class Point {
public:
    Point() = default;
    static Point affine(Rational x, Rational y = 0);
    static Point infinity();

    bool is_infinity() const { return infinity_; }
    Rational const& x() const { return x_; }
    Rational const& y() const { return y_; }

    friend bool operator==(Point const& a, Point const& b);
    friend bool operator!=(Point const& a, Point const& b) { return !(a == b); }
    // Affine points ordered by (x, y); infinity last.
    friend bool operator<(Point const& a, Point const& b);

private:
    bool infinity_ = false;
    Rational x_, y_;
};

struct CurveSpec {
    CurveKind kind = CurveKind::punctured_line;
    std::vector<Rational> punctures; // punctured line only
    Rational a, b;                   // elliptic only
};

/* Smooth affine curve X over Q, as a cheap shared handle.
 *
 *   punctured line:  X = A^1 minus {a_1..a_m}; the completion adds the
 *                    finite punctures and infinity.
 *   elliptic:        X : y^2 = x^3 + a x + b, the completion adds the
 *                    single point at infinity.
 *
 * The first completion puncture (a_1, or infinity when m = 0 or the curve
 * is elliptic) is the distinguished one.
 */
class Curve {
public:
    static Curve punctured_line(std::vector<Rational> punctures);
    static Curve elliptic(Rational const& a, Rational const& b);

    CurveKind kind() const;
    bool is_elliptic() const { return kind() == CurveKind::elliptic; }
    // Name of the affine coordinate: 't' or 'x'.
    char variable() const { return is_elliptic() ? 'x' : 't'; }

    std::vector<Rational> const& punctures() const;
    Rational const& a() const;
    Rational const& b() const;
    // x^3 + a x + b (elliptic only).
    Poly const& cubic() const;
    // -16 (4 a^3 + 27 b^2)
    Rational discriminant() const;

    // Point of X itself (never a puncture).
    bool contains(Point const& P) const;
    bool is_puncture(Point const& P) const;
    bool on_completion(Point const& P) const { return contains(P) || is_puncture(P); }
    std::vector<Point> completion_punctures() const;
    Point distinguished_puncture() const { return completion_punctures().front(); }

    // Rational points of X lying over x = x0 (elliptic: zero, one or two
    // points; line: the point itself unless it is a puncture).
    std::vector<Point> points_over(Rational const& x0) const;
    // Hyperelliptic involution (x, y) -> (x, -y); identity on lines.
    Point involution(Point const& P) const;

    // Structural equality.
    friend bool operator==(Curve const& a, Curve const& b);
    friend bool operator!=(Curve const& a, Curve const& b) { return !(a == b); }

private:
    struct Data;
    explicit Curve(std::shared_ptr<Data const> d) : d_(std::move(d)) {}
    std::shared_ptr<Data const> d_;
};

// Validates a description; throws input_error on singular cubics,
// repeated punctures.
Curve make_curve(CurveSpec const& spec);

} // namespace connexion
