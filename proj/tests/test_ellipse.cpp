#include <doctest.h>

#include <cmath>
#include <random>

#include "vrellipse/ellipse.hpp"
#include "vrellipse/errors.hpp"

using namespace vrellipse;

namespace {

const double kSqrt3 = std::sqrt(3.0);

bool on_ellipse(const EllipseModel& m, const EllipsePoint& p)
{
    return std::abs(p.x() * p.x() / (m.a() * m.a()) + p.y() * p.y() - 1.0) <= 1e-12;
}

}  // namespace

TEST_CASE("model and points")
{
    CHECK_THROWS_AS(EllipseModel(0.9), ParameterError);
    CHECK_THROWS_AS(EllipseModel(1.5), ParameterError);
    const EllipseModel m(1.2);
    const EllipsePoint top = m.at(kPi / 2);
    CHECK(top.x() == 0.0);
    CHECK(top.y() == 1.0);
    CHECK(m.at(kTwoPi + 0.5) == m.at(0.5));
    CHECK(m.project(0.0, 3.0) == top);
    CHECK(param_offset(m.at(6.0), m.at(0.1)) == doctest::Approx(0.1 + kTwoPi - 6.0));
}

TEST_CASE("antipodal normal")
{
    const EllipseModel m(1.2);
    const EllipsePoint h = antipodal_normal(m, m.at(0.0));
    CHECK(h.x() == doctest::Approx(-1.2));
    CHECK(h.y() == doctest::Approx(0.0));

    const EllipseModel circle(1.0);
    const EllipsePoint c = antipodal_normal(circle, circle.at(1.0));
    CHECK(c.x() == doctest::Approx(-std::cos(1.0)));
    CHECK(c.y() == doctest::Approx(-std::sin(1.0)));

    // q - p is parallel to the normal (x / a^2, y) at p.
    const EllipsePoint p = m.at(kPi / 4);
    const EllipsePoint q = antipodal_normal(m, p);
    CHECK(on_ellipse(m, q));
    const double nx = p.x() / (m.a() * m.a()), ny = p.y();
    CHECK(std::abs((q.x() - p.x()) * ny - (q.y() - p.y()) * nx) <= 1e-9);

    const EllipsePoint back = inverse_antipodal_normal(m, m.at(kPi));
    CHECK(back.x() == doctest::Approx(1.2));
    const EllipsePoint cb = inverse_antipodal_normal(circle, circle.at(2.0));
    CHECK(cb.t() == doctest::Approx(2.0 + kPi));
}

TEST_CASE("antipodal normal properties")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (const double a : {1.0, 1.1, 1.2, std::sqrt(2.0)}) {
        const EllipseModel m(a);
        for (int i = 0; i < 100; ++i) {
            const EllipsePoint p = m.at(angle(rng));
            const EllipsePoint round_trip = antipodal_normal(m, inverse_antipodal_normal(m, p));
            CHECK(std::hypot(round_trip.x() - p.x(), round_trip.y() - p.y()) <= 1e-9);
            // Strictly inside a quadrant, h lands in the opposite one.
            if (std::abs(p.x()) > 1e-6 && std::abs(p.y()) > 1e-6) {
                const EllipsePoint h = antipodal_normal(m, p);
                CHECK(h.x() * p.x() < 0.0);
                CHECK(h.y() * p.y() < 0.0);
            }
        }
    }
}

TEST_CASE("advance")
{
    const EllipseModel circle(1.0);
    const EllipsePoint q = advance(circle, circle.at(0.7), 1.3);
    CHECK(q.t() == doctest::Approx(0.7 + 2.0 * std::asin(0.65)));

    const EllipseModel m(1.2);
    const double r1 = critical_radii(m).r1;
    const EllipsePoint v = advance(m, m.at(0.0), r1);
    CHECK(v.x() == doctest::Approx(-(3 * 1.2 - std::pow(1.2, 3)) / (1.44 + 3)).epsilon(1e-9));
    CHECK(v.y() == doctest::Approx(2 * kSqrt3 * 1.2 / (1.44 + 3)).epsilon(1e-9));

    const EllipsePoint p = m.at(0.3);
    const EllipsePoint near = advance(m, p, 0.5), far = advance(m, p, 0.6);
    CHECK(in_cyclic_order(p.cycle(), near.cycle(), far.cycle(), true));

    CHECK_THROWS_AS(advance(m, p, 0.0), ParameterError);
    CHECK_THROWS_AS(advance(m, p, 2.0), ParameterError);
}

TEST_CASE("advance residuals and cyclicity")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi), scale(0.01, 1.99);
    const EllipseModel m(1.2);
    for (int i = 0; i < 1000; ++i) {
        const EllipsePoint p = m.at(angle(rng));
        const double r = scale(rng);
        CHECK(std::abs(distance(p, advance(m, p, r)) - r) <= 1e-10);
    }
    for (int i = 0; i < 300; ++i) {
        const double r = scale(rng);
        EllipsePoint p = m.at(angle(rng)), q = m.at(angle(rng)), w = m.at(angle(rng));
        if (!in_cyclic_order(p.cycle(), q.cycle(), w.cycle(), true)) {
            std::swap(q, w);
        }
        CHECK(in_cyclic_order(advance(m, p, r).cycle(), advance(m, q, r).cycle(), advance(m, w, r).cycle(), false));
    }
}

TEST_CASE("triangle side and critical radii")
{
    const EllipseModel m(1.2);
    CHECK(triangle_side(m, m.at(0.0)) == doctest::Approx(4 * kSqrt3 * 1.2 / (1.44 + 3)).epsilon(1e-12));
    CHECK(triangle_side(m, m.at(kPi / 2)) == doctest::Approx(4 * kSqrt3 * 1.44 / (3 * 1.44 + 1)).epsilon(1e-12));
    CHECK(triangle_side(EllipseModel(1.0), EllipseModel(1.0).at(0.4)) == doctest::Approx(kSqrt3));

    const CriticalRadii root2 = critical_radii(EllipseModel(std::sqrt(2.0)));
    CHECK(root2.r1 == doctest::Approx(4 * std::sqrt(6.0) / 5).epsilon(1e-12));
    CHECK(root2.r2 == doctest::Approx(8 * kSqrt3 / 7).epsilon(1e-12));
    const CriticalRadii one = critical_radii(EllipseModel(1.0));
    CHECK(one.r1 == doctest::Approx(kSqrt3));
    CHECK(one.r2 == doctest::Approx(kSqrt3));
    const CriticalRadii r = critical_radii(m);
    CHECK(r.r1 == doctest::Approx(1.8724866).epsilon(1e-6));
    CHECK(r.r2 == doctest::Approx(1.8753029).epsilon(1e-6));
}

TEST_CASE("inscribed triangles")
{
    const EllipseModel m(1.2);
    const double a = 1.2, a2 = a * a;
    const TriangleCertificate top = inscribed_triangle(m, m.at(kPi / 2));
    CHECK(top.vertices[0].y() == 1.0);
    const double bx = 2 * kSqrt3 * a2 / (3 * a2 + 1), by = -(3 * a2 - 1) / (3 * a2 + 1);
    CHECK(std::abs(top.vertices[1].x() + bx) <= 1e-8);
    CHECK(std::abs(top.vertices[1].y() - by) <= 1e-8);
    CHECK(std::abs(top.vertices[2].x() - bx) <= 1e-8);
    CHECK(std::abs(top.vertices[2].y() - by) <= 1e-8);

    const EllipseModel circle(1.0);
    const TriangleCertificate c = inscribed_triangle(circle, circle.at(0.2));
    CHECK(c.vertices[1].t() == doctest::Approx(0.2 + kTwoPi / 3));
    CHECK(c.vertices[2].t() == doctest::Approx(0.2 + 2 * kTwoPi / 3));

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (int i = 0; i < 200; ++i) {
        const TriangleCertificate t = inscribed_triangle(m, m.at(angle(rng)));
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(on_ellipse(m, t.vertices[k]));
            CHECK(std::abs(distance(t.vertices[k], t.vertices[(k + 1) % 3]) - t.side) <= 1e-9);
            CHECK(std::abs(triangle_side(m, t.vertices[k]) - t.side) <= 1e-8);
        }
        CHECK(in_cyclic_order(t.vertices[0].cycle(), t.vertices[1].cycle(), t.vertices[2].cycle(), true));
    }
}

TEST_CASE("sextic")
{
    const double a = 1.2;
    const double r1 = critical_radii(EllipseModel(a)).r1;
    const double vx = -(3 * a - a * a * a) / (a * a + 3);
    const double at_a = std::abs(sextic_residual(a, a, r1)) / sextic_scale(a, a, r1);
    const double at_v = std::abs(sextic_residual(vx, a, r1)) / sextic_scale(vx, a, r1);
    CHECK(at_a <= 1e-6);
    CHECK(at_v <= 1e-6);
    const double off = std::abs(sextic_residual(0.3, a, r1));
    CHECK(off > 1e3 * std::abs(sextic_residual(a, a, r1)));
}

TEST_CASE("extrema of the side function")
{
    for (const double a : {1.1, 1.2, std::sqrt(2.0)}) {
        const EllipseModel m(a);
        const CriticalRadii r = critical_radii(m);
        const auto ext = side_extrema(m);
        REQUIRE(ext.size() == 12);
        for (std::size_t j = 0; j < 12; ++j) {
            CHECK(ext[j].minimum == (j % 2 == 0));
            CHECK(triangle_side(m, ext[j].point) == doctest::Approx(ext[j].minimum ? r.r1 : r.r2).epsilon(1e-10));
        }
        // Sampled s stays inside [r1, r2] and is monotone between extrema.
        double lo = 10, hi = 0;
        for (int i = 0; i < 2000; ++i) {
            const double s = triangle_side(m, m.at(kTwoPi * i / 2000.0), 1e-12);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        CHECK(lo == doctest::Approx(r.r1).epsilon(1e-6));
        CHECK(hi == doctest::Approx(r.r2).epsilon(1e-6));
        CHECK(lo >= r.r1 - 1e-11);
        CHECK(hi <= r.r2 + 1e-11);
        for (std::size_t j = 0; j < 12; ++j) {
            const EllipsePoint& from = ext[j].point;
            const double span = param_offset(from, ext[(j + 1) % 12].point);
            double prev = triangle_side(m, from, 1e-12);
            for (int i = 1; i <= 40; ++i) {
                const double s = triangle_side(m, m.at(from.t() + span * i / 40.0), 1e-12);
                if (ext[j].minimum) {
                    CHECK(s > prev - 1e-11);
                } else {
                    CHECK(s < prev + 1e-11);
                }
                prev = s;
            }
        }
    }
    CHECK_THROWS_AS(side_extrema(EllipseModel(1.0)), ParameterError);
}

TEST_CASE("z-points")
{
    const EllipseModel m(1.2);
    const CriticalRadii radii = critical_radii(m);
    const double r = 0.5 * (radii.r1 + radii.r2);
    const auto z = z_points(m, r);
    REQUIRE(z.size() == 12);
    const auto ext = side_extrema(m);
    for (std::size_t j = 0; j < 12; ++j) {
        CHECK(std::abs(triangle_side(m, z[j]) - r) <= 1e-9);
        CHECK(point_class(m, r, z[j]) == PointClass::Critical);
        // z_j sits between extremum j-1 and extremum j.
        CHECK(in_cyclic_order(ext[(j + 11) % 12].point.cycle(), z[j].cycle(), ext[j].point.cycle(), true));
        // Closed under the point reflection.
        const EllipsePoint& opposite = z[(j + 6) % 12];
        CHECK(opposite.x() == doctest::Approx(-z[j].x()).epsilon(1e-9));
        CHECK(opposite.y() == doctest::Approx(-z[j].y()).epsilon(1e-9));
    }
    // Each fast arc feeds the next group's fast arc under g_r.
    CHECK(distance(z[0], z[4]) == doctest::Approx(r).epsilon(1e-9));
    CHECK_THROWS_AS(z_points(m, radii.r1), ParameterError);
    CHECK_THROWS_AS(z_points(EllipseModel(1.0), 1.8), ParameterError);
}

TEST_CASE("point classes")
{
    const EllipseModel m(1.2);
    const CriticalRadii radii = critical_radii(m);
    const double r = 0.5 * (radii.r1 + radii.r2);
    CHECK(point_class(m, r, m.at(0.0)) == PointClass::Fast);
    CHECK(point_class(m, r, m.at(kPi / 2)) == PointClass::Slow);
    const auto z = z_points(m, r);
    CHECK(point_class(m, r, m.at(z[0].t() + 0.01)) == PointClass::Fast);
    CHECK(point_class(m, r, m.at(z[1].t() + 0.01)) == PointClass::Slow);
}
