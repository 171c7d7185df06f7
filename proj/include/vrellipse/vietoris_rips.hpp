#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vrellipse/cyclic_graph.hpp"
#include "vrellipse/dynamics.hpp"
#include "vrellipse/ellipse.hpp"
#include "vrellipse/oracle.hpp"

namespace vrellipse {

/// Whether a simplex needs diameter < r or <= r.
enum class Convention { Less, LessEq };

const char* to_string(Convention c);
/// Accepts "<", "less", "<=", "lesseq" (case-sensitive).
Convention parse_convention(const std::string& text);

struct BarInterval {
    std::size_t dim = 0;
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();
    bool birth_closed = false;
    bool death_closed = false;

    friend bool operator==(const BarInterval&, const BarInterval&) = default;
};

/// Ephemeral classes: a point [r, r] of the given multiplicity for every r in
/// the open interval (lo, hi). Kept symbolic.
struct DiagonalRecord {
    std::size_t dim = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t multiplicity = 1;

    friend bool operator==(const DiagonalRecord&, const DiagonalRecord&) = default;
};

struct Barcode {
    std::vector<BarInterval> intervals;
    std::vector<DiagonalRecord> diagonal;

    friend bool operator==(const Barcode&, const Barcode&) = default;
};

/// Points sorted by parameter. Throws ParameterError on duplicates.
std::vector<EllipsePoint> sort_cyclically(std::span<const EllipsePoint> points);

/// Directed VR graph of a finite subset at scale r (0 < r < 2): p -> q when
/// q lies on the arc (p, g_r(p)) with d(p, q) < r (or <= r). Vertices follow
/// sort_cyclically(points).
CyclicGraph vr_graph(const EllipseModel& m, std::span<const EllipsePoint> points, double r, Convention c);

struct SampleClassification {
    CyclicGraph graph;
    WindingFraction wf;
    HomotopyType type = HomotopyType::point();
    OrbitReport orbits;
};

SampleClassification classify_sample(const EllipseModel& m, std::span<const EllipsePoint> points, double r,
                                     Convention c);

/// Clique complex of the VR graph through max_dim.
FilteredComplex vr_complex(const EllipseModel& m, std::span<const EllipsePoint> points, double r, Convention c,
                           std::size_t max_dim);

struct EllipseHomotopy {
    HomotopyType type = HomotopyType::point();
    /// r lies within 1e-9 of r1 or r2.
    bool near_boundary = false;
};

/// Homotopy type of the VR complex of the whole ellipse for 0 < r <= r2.
/// r equal to r1 or r2 within 1e-12 counts as the boundary value. Throws
/// UnsupportedRangeError above r2, and for the circle with <= at r1 = r2.
EllipseHomotopy ellipse_homotopy(const EllipseModel& m, double r, Convention c);

/// Persistent homology of the VR filtration of the whole ellipse.
Barcode ellipse_barcode(const EllipseModel& m, Convention c);

inline constexpr std::size_t kDefaultBarcodeCap = 60;

/// GF(2) persistence of a finite sample in dimensions 0..max_dim.
/// Zero-length bars are dropped; < gives (b, d], <= gives [b, d).
Barcode sample_barcode(const EllipseModel& m, std::span<const EllipsePoint> points, Convention c,
                       std::size_t max_dim = 2, std::size_t cap = kDefaultBarcodeCap);

/// Rank of H_2 VR(X, r) -> H_2 VR(X, r_tilde) for r <= r_tilde, both at
/// winding fraction 1/3, from the orbit-hitting count of the identity map.
std::size_t rank_across(const EllipseModel& m, std::span<const EllipsePoint> points, double r, double r_tilde,
                        Convention c);

/// Pairwise Euclidean distances.
std::vector<std::vector<double>> distance_matrix(std::span<const EllipsePoint> points);

}  // namespace vrellipse
