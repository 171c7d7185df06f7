#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vrellipse/errors.hpp"
#include "vrellipse/sampler.hpp"
#include "vrellipse/vietoris_rips.hpp"

using namespace vrellipse;
using namespace vrellipse::testing;

namespace {

SamplerSpec middle_spec(std::size_t n_first, std::size_t n_second, double epsilon = 0.05, std::uint64_t seed = 1)
{
    const CriticalRadii radii = critical_radii(EllipseModel(1.2));
    SamplerSpec spec;
    spec.r = 0.5 * (radii.r1 + radii.r2);
    spec.epsilon = epsilon;
    spec.k = n_first + n_second;
    spec.n_first = n_first;
    spec.n_second = n_second;
    spec.seed = seed;
    return spec;
}

/// Betti numbers of the dismantled core of the VR graph.
std::vector<std::size_t> core_betti(const AdversarialSample& s, double r)
{
    const CyclicGraph g = vr_graph(EllipseModel(1.2), s.points, r, Convention::Less);
    return clique_betti(dismantle(g).core);
}

}  // namespace

TEST_CASE("adversarial samples with two orbits")
{
    const SamplerSpec spec = middle_spec(1, 1);
    const AdversarialSample s = adversarial_sample(spec);
    CHECK(s.orbit_count == 2);
    CHECK(s.type == HomotopyType::wedge(1, 1));
    CHECK(s.epsilon_achieved <= spec.epsilon);
    CHECK(s.seeded_orbits.size() == 2);
    CHECK(core_betti(s, spec.r) == std::vector<std::size_t>{1, 0, 1});

    // The seeded triangles are the periodic orbits.
    const CyclicGraph g = vr_graph(EllipseModel(1.2), s.points, spec.r, Convention::LessEq);
    for (const auto& tri : s.seeded_orbits) {
        CHECK(step(g, tri[0]) == tri[1]);
        CHECK(step(g, tri[1]) == tri[2]);
        CHECK(step(g, tri[2]) == tri[0]);
    }
}

TEST_CASE("adversarial sample with five orbits")
{
    const SamplerSpec spec = middle_spec(2, 3);
    const AdversarialSample s = adversarial_sample(spec);
    CHECK(s.orbit_count == 5);
    CHECK(core_betti(s, spec.r) == std::vector<std::size_t>{1, 0, 4});
}

TEST_CASE("density does not remove orbits")
{
    for (const double eps : {0.05, 0.02, 0.01}) {
        const AdversarialSample s = adversarial_sample(middle_spec(1, 1, eps));
        CHECK(s.orbit_count == 2);
        CHECK(s.epsilon_achieved <= eps);
    }
}

TEST_CASE("the slow fill never changes the orbit count")
{
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        CHECK(adversarial_sample(middle_spec(2, 1, 0.05, seed)).orbit_count == 3);
    }
}

TEST_CASE("removing a seeded vertex")
{
    const SamplerSpec spec = middle_spec(2, 2);
    const AdversarialSample s = adversarial_sample(spec);
    const EllipseModel m(1.2);
    for (std::size_t i = 0; i < s.seeded_orbits.size(); ++i) {
        // The densifying chain runs into the first triangle of each arc, so
        // its last point takes over a removed vertex there. Stacked
        // triangles are isolated and their orbit disappears.
        const bool first = i == 0 || i == spec.n_first;
        for (const std::size_t v : s.seeded_orbits[i]) {
            std::vector<EllipsePoint> fewer = s.points;
            fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(v));
            CHECK(classify_sample(m, fewer, spec.r, Convention::Less).orbits.count == (first ? 4 : 3));
        }
    }
}

TEST_CASE("sampler preconditions")
{
    SamplerSpec spec = middle_spec(1, 1);
    spec.r = 1.0;
    CHECK_THROWS_AS(adversarial_sample(spec), ParameterError);
    spec = middle_spec(1, 1);
    spec.k = 3;
    CHECK_THROWS_AS(adversarial_sample(spec), ParameterError);
    CHECK_THROWS_AS(adversarial_sample(middle_spec(0, 2)), ParameterError);
    CHECK_THROWS_AS(adversarial_sample(middle_spec(400, 1)), VerificationError);
}

TEST_CASE("uniform samples")
{
    const EllipseModel circle(1.0);
    const UniformSample three = uniform_sample(circle, 3, 0, 0.0);
    CHECK(distance(three.points[0], three.points[1]) == doctest::Approx(std::sqrt(3.0)));
    CHECK(distance(three.points[1], three.points[2]) == doctest::Approx(std::sqrt(3.0)));

    const EllipseModel m(1.2);
    const UniformSample a = uniform_sample(m, 200, 42);
    const UniformSample b = uniform_sample(m, 200, 42);
    CHECK(a.points == b.points);
    CHECK_FALSE(a.points == uniform_sample(m, 200, 43).points);
    // Spacing is at most 1.5 parameter steps and the speed at most a.
    CHECK(a.epsilon_achieved <= 1.2 * 1.5 * kTwoPi / 200);
    CHECK_THROWS_AS(uniform_sample(m, 2, 0), ParameterError);
    CHECK_THROWS_AS(uniform_sample(m, 10, 0, 0.5), ParameterError);
}

TEST_CASE("epsilon density")
{
    const EllipseModel circle(1.0);
    const std::vector<EllipsePoint> quad{circle.at(0), circle.at(kPi / 2), circle.at(kPi), circle.at(1.5 * kPi)};
    CHECK(epsilon_density(circle, quad) == doctest::Approx(2 * std::sin(kPi / 8)).epsilon(1e-9));
    CHECK(epsilon_density(circle, std::vector<EllipsePoint>{circle.at(0.0)}) == doctest::Approx(2.0));
    CHECK(epsilon_density(circle, uniform_sample(circle, 1000, 0, 0.0).points) <= 0.01);
    CHECK_THROWS_AS(epsilon_density(circle, std::vector<EllipsePoint>{}), ParameterError);
}

TEST_CASE("designed orbit merge")
{
    const EllipseModel m(1.2);
    const MergeInstance inst = orbit_merge_instance(m);
    const CriticalRadii radii = critical_radii(m);
    CHECK(inst.points.size() == 12);
    CHECK(radii.r1 < inst.r);
    CHECK(inst.r < inst.r_tilde);
    CHECK(inst.r_tilde < radii.r2);
    for (const Convention c : {Convention::Less, Convention::LessEq}) {
        CHECK(classify_sample(m, inst.points, inst.r, c).orbits.count == 4);
        CHECK(classify_sample(m, inst.points, inst.r_tilde, c).orbits.count == 2);
        CHECK(rank_across(m, inst.points, inst.r, inst.r_tilde, c) == 1);
        CHECK(rank_across(m, inst.points, inst.r, inst.r, c) == 3);
        const FilteredComplex small = vr_complex(m, inst.points, inst.r, c, 3);
        const FilteredComplex big = vr_complex(m, inst.points, inst.r_tilde, c, 3);
        CHECK(induced_rank(small, big, 2) == 1);
    }
}
