#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "vrellipse/circle.hpp"

namespace vrellipse {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Point (a cos t, sin t) of the ellipse. The parameter is authoritative;
/// coordinates are cached.
class EllipsePoint {
public:
    EllipsePoint() = default;

    [[nodiscard]] double t() const { return t_; }
    [[nodiscard]] double x() const { return x_; }
    [[nodiscard]] double y() const { return y_; }
    /// Position on the unit-circumference circle, t / 2pi.
    [[nodiscard]] CyclePosition cycle() const { return CyclePosition(t_ / kTwoPi); }

    friend bool operator==(const EllipsePoint& lhs, const EllipsePoint& rhs) { return lhs.t_ == rhs.t_; }

private:
    friend class EllipseModel;
    EllipsePoint(double t, double x, double y) : t_(t), x_(x), y_(y) {}

    double t_ = 0.0;
    double x_ = 1.0;
    double y_ = 0.0;
};

/// The ellipse (x/a)^2 + y^2 = 1 with 1 <= a <= sqrt(2).
class EllipseModel {
public:
    explicit EllipseModel(double a);

    [[nodiscard]] double a() const { return a_; }
    [[nodiscard]] bool is_circle() const { return a_ == 1.0; }

    /// Point at parameter t (any real, reduced mod 2pi). Multiples of pi/2
    /// get exact axis coordinates.
    [[nodiscard]] EllipsePoint at(double t) const;
    /// Point whose parameter is atan2(y, x/a); the input need not lie on Y.
    [[nodiscard]] EllipsePoint project(double x, double y) const;

private:
    double a_;
};

/// Euclidean distance.
double distance(const EllipsePoint& p, const EllipsePoint& q);

/// Parameter advance from p clockwise to q, in [0, 2pi).
double param_offset(const EllipsePoint& p, const EllipsePoint& q);

/// h(p): the second intersection of the normal line at p with Y.
EllipsePoint antipodal_normal(const EllipseModel& m, const EllipsePoint& p);

/// h^{-1}(p): the point whose normal line meets Y again at p.
EllipsePoint inverse_antipodal_normal(const EllipseModel& m, const EllipsePoint& p);

/// g_r(p): the point at distance r from p on the clockwise arc [p, h^{-1}(p)].
/// Requires 0 < r < 2.
EllipsePoint advance(const EllipseModel& m, const EllipsePoint& p, double r);

inline constexpr double kSideTolerance = 1e-13;

/// s(p): side of the unique inscribed equilateral triangle with vertex p,
/// bisected to `tolerance` in r.
double triangle_side(const EllipseModel& m, const EllipsePoint& p, double tolerance = kSideTolerance);

struct CriticalRadii {
    double r1;
    double r2;
};

/// r1 = 4 sqrt3 a / (a^2 + 3) = min s, r2 = 4 sqrt3 a^2 / (3a^2 + 1) = max s.
CriticalRadii critical_radii(const EllipseModel& m);

struct TriangleCertificate {
    std::array<EllipsePoint, 3> vertices;  // p, g_s(p), g_s^2(p)
    double side = 0.0;
};

TriangleCertificate inscribed_triangle(const EllipseModel& m, const EllipsePoint& p,
                                       double tolerance = kSideTolerance);

/// The printed sextic p(x, a, r), evaluated by powers of x.
double sextic_residual(double x, double a, double r);
/// Largest absolute monomial of p(x, a, r); the natural scale for residuals.
double sextic_scale(double x, double a, double r);

struct Extremum {
    EllipsePoint point;
    bool minimum;
};

/// The six minima and six maxima of s, sorted by parameter, starting at (a, 0).
/// Not defined for the circle.
std::vector<Extremum> side_extrema(const EllipseModel& m);

/// The twelve solutions of s = r for r1 < r < r2, in the order
/// z0, z1, z2, z3, z0', ..., z3''. (z0, z1) and (z2, z3) are fast, (z1, z2)
/// and (z3, z0') slow; the primed groups repeat this a third of the way round.
std::vector<EllipsePoint> z_points(const EllipseModel& m, double r);

enum class PointClass { Fast, Slow, Critical };

const char* to_string(PointClass c);

/// Fast iff s(p) < r - 1e-9, slow iff s(p) > r + 1e-9.
PointClass point_class(const EllipseModel& m, double r, const EllipsePoint& p);

}  // namespace vrellipse
