#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vrellipse/cyclic_graph.hpp"
#include "vrellipse/ellipse.hpp"

namespace vrellipse {

struct SamplerSpec {
    double a = 1.2;
    double r = 0.0;
    double epsilon = 0.05;
    std::size_t k = 2;
    /// Orbits seeded in the first and second fast interval; must sum to k.
    std::size_t n_first = 1;
    std::size_t n_second = 1;
    std::uint64_t seed = 0;
};

struct AdversarialSample {
    std::vector<EllipsePoint> points;  // sorted by parameter
    double epsilon_achieved = 0.0;
    std::size_t orbit_count = 0;
    HomotopyType type = HomotopyType::point();
    /// Indices into points of the k seeded orbit triangles.
    std::vector<std::array<std::size_t, 3>> seeded_orbits;
    /// Grid estimate of the uniform chain step; only the smallest one is kept.
    double uniform_delta = 0.0;
    std::size_t chain_points = 0;
};

/// An epsilon-dense sample whose VR graph at scale r has exactly k periodic
/// orbits (under both conventions), so its VR complex is a wedge of k-1
/// 2-spheres. Every postcondition is checked; failures raise
/// VerificationError with the stage that went wrong.
AdversarialSample adversarial_sample(const SamplerSpec& spec);

struct UniformSample {
    std::vector<EllipsePoint> points;
    double epsilon_achieved = 0.0;
};

/// n points at equal parameter spacing, each moved by up to `jitter` of a
/// spacing. Deterministic in the seed.
UniformSample uniform_sample(const EllipseModel& m, std::size_t n, std::uint64_t seed, double jitter = 0.25);

/// Largest distance from a node of a parameter grid on Y to the nearest
/// sample point. Underestimates the true value by at most half the mesh.
double epsilon_density(const EllipseModel& m, std::span<const EllipsePoint> points, std::size_t grid = 10000);

struct MergeInstance {
    std::vector<EllipsePoint> points;
    double r = 0.0;
    double r_tilde = 0.0;
};

/// Twelve points: two orbit triangles near z1 and two near z3 at scale r,
/// spaced so that each pair fuses into one orbit at r_tilde. Both scales lie
/// in (r1, r2); the H_2 map between them has rank 1.
MergeInstance orbit_merge_instance(const EllipseModel& m);

}  // namespace vrellipse
