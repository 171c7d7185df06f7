#include "vrellipse/ellipse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vrellipse/errors.hpp"

namespace vrellipse {

namespace {

constexpr double kParamTolerance = 1e-13;
constexpr double kBracketTolerance = 1e-4;
constexpr int kMaxBisections = 100;
constexpr double kClassTolerance = 1e-9;

double normalize_param(double t)
{
    double u = std::fmod(t, kTwoPi);
    if (u < 0.0) {
        u += kTwoPi;
    }
    if (u >= kTwoPi) {
        u = 0.0;
    }
    return u;
}

/// Root of an increasing f on [lo, hi] with f(lo) < 0 <= f(hi).
template <class F>
double bisect(F&& f, double lo, double hi, double tol)
{
    for (int i = 0; i < kMaxBisections && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (f(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

bool on_axis(const EllipsePoint& p)
{
    return p.x() == 0.0 || p.y() == 0.0;
}

EllipsePoint inverse_normal(const EllipseModel& m, const EllipsePoint& p, double tol)
{
    if (m.is_circle() || on_axis(p)) {
        return m.at(p.t() + kPi);
    }
    const double a = m.a();
    // Reflect into the open third quadrant; the preimage is then in the first.
    const double sx = p.x() > 0.0 ? -1.0 : 1.0;
    const double sy = p.y() > 0.0 ? -1.0 : 1.0;
    const double x = sx * p.x();
    const double y = sy * p.y();
    const double k = a * a - 1.0;
    const double s = bisect([&](double u) { return k * std::sin(u) - a * x * std::tan(u) + y; }, 0.0, kPi / 2, tol);
    return m.project(sx * a * std::cos(s), sy * std::sin(s));
}

// Terms of p(x, a, r): coefficient, power of a, power of r, power of x.
struct SexticTerm {
    double coef;
    int a_pow;
    int r_pow;
    int x_pow;
};

constexpr SexticTerm kSextic[] = {
    {12288, 12, 4, 0},  {-6912, 12, 6, 0},  {-10752, 10, 6, 0}, {13568, 8, 6, 0},   {1296, 12, 8, 0},
    {4032, 10, 8, 0},   {-2208, 8, 8, 0},   {-6720, 6, 8, 0},   {3600, 4, 8, 0},    {-81, 12, 10, 0},
    {-378, 10, 10, 0},  {-63, 8, 10, 0},    {1044, 6, 10, 0},   {-63, 4, 10, 0},    {-378, 2, 10, 0},
    {-81, 0, 10, 0},    {-36864, 10, 4, 2}, {36864, 8, 4, 2},   {13824, 10, 6, 2},  {-4608, 8, 6, 2},
    {16896, 6, 6, 2},   {-26112, 4, 6, 2},  {-1296, 10, 8, 2},  {-432, 8, 8, 2},    {-4512, 6, 8, 2},
    {4512, 4, 8, 2},    {432, 2, 8, 2},     {1296, 0, 8, 2},    {36864, 8, 4, 4},   {-73728, 6, 4, 4},
    {36864, 4, 4, 4},   {-6912, 8, 6, 4},   {15360, 6, 6, 4},   {-16896, 4, 6, 4},  {15360, 2, 6, 4},
    {-6912, 0, 6, 4},   {-12288, 6, 4, 6},  {36864, 4, 4, 6},   {-36864, 2, 4, 6},  {12288, 0, 4, 6},
};

}  // namespace

EllipseModel::EllipseModel(double a) : a_(a)
{
    if (!(a >= 1.0 && a <= std::sqrt(2.0))) {
        throw ParameterError("EllipseModel: need 1 <= a <= sqrt(2), got " + std::to_string(a));
    }
}

EllipsePoint EllipseModel::at(double t) const
{
    const double u = normalize_param(t);
    if (u == 0.0) {
        return EllipsePoint(u, a_, 0.0);
    }
    if (u == kPi / 2) {
        return EllipsePoint(u, 0.0, 1.0);
    }
    if (u == kPi) {
        return EllipsePoint(u, -a_, 0.0);
    }
    if (u == 3 * kPi / 2) {
        return EllipsePoint(u, 0.0, -1.0);
    }
    return EllipsePoint(u, a_ * std::cos(u), std::sin(u));
}

EllipsePoint EllipseModel::project(double x, double y) const
{
    if (y == 0.0) {
        return at(x >= 0.0 ? 0.0 : kPi);
    }
    if (x == 0.0) {
        return at(y > 0.0 ? kPi / 2 : 3 * kPi / 2);
    }
    return at(std::atan2(y, x / a_));
}

double distance(const EllipsePoint& p, const EllipsePoint& q)
{
    return std::hypot(p.x() - q.x(), p.y() - q.y());
}

double param_offset(const EllipsePoint& p, const EllipsePoint& q)
{
    return normalize_param(q.t() - p.t());
}

EllipsePoint antipodal_normal(const EllipseModel& m, const EllipsePoint& p)
{
    if (m.is_circle() || on_axis(p)) {
        return m.at(p.t() + kPi);
    }
    const double a2 = m.a() * m.a();
    const double nx = p.x() / a2;
    const double ny = p.y();
    const double lambda = -2.0 * (p.x() * nx / a2 + p.y() * ny) / (nx * nx / a2 + ny * ny);
    return m.project(p.x() + lambda * nx, p.y() + lambda * ny);
}

EllipsePoint inverse_antipodal_normal(const EllipseModel& m, const EllipsePoint& p)
{
    return inverse_normal(m, p, kParamTolerance);
}

namespace {

EllipsePoint advance_within(const EllipseModel& m, const EllipsePoint& p, double r, double tol)
{
    if (m.is_circle()) {
        return m.at(p.t() + 2.0 * std::asin(r / 2.0));
    }
    // d_p increases along [p, h^{-1}(p)] and tops out at >= 2, so a rough
    // preimage is a good enough bracket unless r is within a hair of the top.
    EllipsePoint top = inverse_normal(m, p, kBracketTolerance);
    if (distance(p, top) < r) {
        top = inverse_normal(m, p, kParamTolerance);
    }
    double span = param_offset(p, top);
    if (span == 0.0) {
        span = kTwoPi;
    }
    const double u = bisect([&](double v) { return distance(p, m.at(p.t() + v)) - r; }, 0.0, span, tol);
    return m.at(p.t() + u);
}

}  // namespace

EllipsePoint advance(const EllipseModel& m, const EllipsePoint& p, double r)
{
    if (!(r > 0.0 && r < 2.0)) {
        throw ParameterError("advance: need 0 < r < 2, got " + std::to_string(r));
    }
    return advance_within(m, p, r, kParamTolerance);
}

double triangle_side(const EllipseModel& m, const EllipsePoint& p, double tolerance)
{
    if (m.is_circle()) {
        return std::sqrt(3.0);
    }
    // Parameter swept by three hops; increasing in r.
    const double hop_tolerance = tolerance;
    auto sweep = [&](double r) {
        double total = 0.0;
        EllipsePoint q = p;
        for (int i = 0; i < 3; ++i) {
            const EllipsePoint next = advance_within(m, q, r, hop_tolerance);
            total += param_offset(q, next);
            q = next;
        }
        return total - kTwoPi;
    };
    // s takes values in [r1, r2]; fall back to [1, 2) if rounding disagrees.
    const CriticalRadii radii = critical_radii(m);
    double lo = std::max(1.0, radii.r1 - 1e-9);
    double hi = std::min(2.0 - 1e-9, radii.r2 + 1e-9);
    if (!(sweep(lo) < 0.0 && sweep(hi) >= 0.0)) {
        lo = 1.0;
        hi = 2.0 - 1e-9;
        if (!(sweep(lo) < 0.0 && sweep(hi) >= 0.0)) {
            throw InternalError("triangle_side: side length not bracketed by [1, 2)");
        }
    }
    return bisect(sweep, lo, hi, tolerance);
}

CriticalRadii critical_radii(const EllipseModel& m)
{
    const double a = m.a();
    const double root3 = std::sqrt(3.0);
    return {4.0 * root3 * a / (a * a + 3.0), 4.0 * root3 * a * a / (3.0 * a * a + 1.0)};
}

TriangleCertificate inscribed_triangle(const EllipseModel& m, const EllipsePoint& p, double tolerance)
{
    TriangleCertificate cert;
    cert.side = triangle_side(m, p, tolerance);
    cert.vertices[0] = p;
    cert.vertices[1] = advance(m, p, cert.side);
    cert.vertices[2] = advance(m, cert.vertices[1], cert.side);
    return cert;
}

double sextic_residual(double x, double a, double r)
{
    double by_power[4] = {0.0, 0.0, 0.0, 0.0};
    for (const auto& term : kSextic) {
        by_power[term.x_pow / 2] += term.coef * std::pow(a, term.a_pow) * std::pow(r, term.r_pow);
    }
    const double x2 = x * x;
    return ((by_power[3] * x2 + by_power[2]) * x2 + by_power[1]) * x2 + by_power[0];
}

double sextic_scale(double x, double a, double r)
{
    double scale = 0.0;
    for (const auto& term : kSextic) {
        const double monomial = term.coef * std::pow(a, term.a_pow) * std::pow(r, term.r_pow) * std::pow(x, term.x_pow);
        scale = std::max(scale, std::abs(monomial));
    }
    return scale;
}

std::vector<Extremum> side_extrema(const EllipseModel& m)
{
    if (m.is_circle()) {
        throw ParameterError("side_extrema: s is constant on the circle");
    }
    std::vector<Extremum> out;
    out.reserve(12);
    for (int quarter = 0; quarter < 4; ++quarter) {
        // Triangles through the major-axis ends are minima, minor-axis ends maxima.
        const TriangleCertificate tri = inscribed_triangle(m, m.at(quarter * kPi / 2));
        for (const auto& v : tri.vertices) {
            out.push_back({v, quarter % 2 == 0});
        }
    }
    std::sort(out.begin(), out.end(), [](const Extremum& l, const Extremum& r) { return l.point.t() < r.point.t(); });
    return out;
}

std::vector<EllipsePoint> z_points(const EllipseModel& m, double r)
{
    if (m.is_circle()) {
        throw ParameterError("z_points: the circle has r1 = r2");
    }
    const CriticalRadii radii = critical_radii(m);
    if (!(r > radii.r1 && r < radii.r2)) {
        throw ParameterError("z_points: need r1 < r < r2, got " + std::to_string(r));
    }
    const auto ext = side_extrema(m);
    if (ext.size() != 12 || !ext.front().minimum) {
        throw InternalError("z_points: unexpected extremum layout");
    }
    std::vector<EllipsePoint> z;
    z.reserve(12);
    for (std::size_t j = 0; j < 12; ++j) {
        // z_j sits on the monotone arc ending at extremum j (arc 11 wraps to 0).
        const Extremum& from = ext[(j + 11) % 12];
        const Extremum& to = ext[j];
        const double span = param_offset(from.point, to.point);
        const double sign = from.minimum ? 1.0 : -1.0;
        const double u = bisect(
            [&](double v) { return sign * (triangle_side(m, m.at(from.point.t() + v)) - r); }, 0.0, span,
            kParamTolerance);
        z.push_back(m.at(from.point.t() + u));
    }
    return z;
}

const char* to_string(PointClass c)
{
    switch (c) {
    case PointClass::Fast:
        return "fast";
    case PointClass::Slow:
        return "slow";
    case PointClass::Critical:
        return "critical";
    }
    return "?";
}

PointClass point_class(const EllipseModel& m, double r, const EllipsePoint& p)
{
    const double s = triangle_side(m, p);
    if (s < r - kClassTolerance) {
        return PointClass::Fast;
    }
    if (s > r + kClassTolerance) {
        return PointClass::Slow;
    }
    return PointClass::Critical;
}

}  // namespace vrellipse
