#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vrellipse/circle.hpp"

namespace vrellipse {

/// Exact winding fraction k/n, kept reduced. Always 0 <= value < 1/2 for
/// fractions coming out of a valid cyclic graph.
class WindingFraction {
public:
    WindingFraction() = default;
    WindingFraction(std::uint64_t numerator, std::uint64_t denominator);

    [[nodiscard]] std::uint64_t numerator() const { return num_; }
    [[nodiscard]] std::uint64_t denominator() const { return den_; }
    [[nodiscard]] double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    /// "k/n"
    [[nodiscard]] std::string str() const;

    friend bool operator==(const WindingFraction&, const WindingFraction&) = default;
    friend std::strong_ordering operator<=>(const WindingFraction& lhs, const WindingFraction& rhs);

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

/// Homotopy type of the clique complex of a finite cyclic graph: an odd
/// sphere S^{2l+1}, a wedge of `count` copies of S^{2l}, or a point.
class HomotopyType {
public:
    enum class Kind { Point, OddSphere, WedgeOfEvenSpheres };

    static HomotopyType point() { return HomotopyType(Kind::Point, 0, 0); }
    static HomotopyType odd_sphere(std::size_t l) { return HomotopyType(Kind::OddSphere, l, 1); }
    /// An empty wedge is canonicalized to Point.
    static HomotopyType wedge(std::size_t count, std::size_t l);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] std::size_t l() const { return l_; }
    /// Number of spheres (1 for OddSphere, 0 for Point).
    [[nodiscard]] std::size_t count() const { return count_; }
    /// 2l+1 for OddSphere, 2l for a wedge, 0 for Point.
    [[nodiscard]] std::size_t sphere_dimension() const;

    /// Unreduced Betti numbers in dimensions 0..max_dim of any space of this type.
    [[nodiscard]] std::vector<std::size_t> betti_signature(std::size_t max_dim) const;

    /// Human-readable form: "point", "S^1", "wedge^5 S^2".
    [[nodiscard]] std::string str() const;

    friend bool operator==(const HomotopyType&, const HomotopyType&) = default;

private:
    HomotopyType(Kind kind, std::size_t l, std::size_t count) : kind_(kind), l_(l), count_(count) {}

    Kind kind_;
    std::size_t l_;
    std::size_t count_;
};

/// Finite directed cyclic graph in run-length form: vertices are cyclically
/// sorted positions on the circle and vertex i has edges to the next
/// out_degree[i] vertices clockwise.
class CyclicGraph {
public:
    CyclicGraph() = default;
    /// Sizes must agree; everything else is checked by validate().
    CyclicGraph(std::vector<CyclePosition> positions, std::vector<std::size_t> out_degree);

    [[nodiscard]] std::size_t size() const { return positions_.size(); }
    [[nodiscard]] bool empty() const { return positions_.empty(); }
    [[nodiscard]] const std::vector<CyclePosition>& positions() const { return positions_; }
    [[nodiscard]] const std::vector<std::size_t>& out_degree() const { return out_degree_; }
    [[nodiscard]] CyclePosition position(std::size_t i) const { return positions_[i]; }
    [[nodiscard]] std::size_t out_degree(std::size_t i) const { return out_degree_[i]; }

    /// Directed edge i -> j.
    [[nodiscard]] bool has_edge(std::size_t i, std::size_t j) const;

    friend bool operator==(const CyclicGraph&, const CyclicGraph&) = default;

private:
    std::vector<CyclePosition> positions_;
    std::vector<std::size_t> out_degree_;
};

/// C_n^k on positions i/n. Requires 0 <= k < n/2.
CyclicGraph regular(std::size_t n, std::size_t k);

/// All CyclicGraph invariants: strictly increasing positions, n >= 1, cyclic
/// closure, no self-loops and no 2-cycles.
bool validate(const CyclicGraph& g);

/// |N^-(v)| for every vertex. In-neighborhoods of a cyclic graph are
/// contiguous counter-clockwise runs, so the count determines the set.
std::vector<std::size_t> in_degrees(const CyclicGraph& g);

/// v_i is dominated by v_{i+1}: N^-(v_{i+1}) = N^-[v_i].
bool is_dominated(const CyclicGraph& g, std::size_t i);

/// Induced subgraph on the given strictly increasing vertex indices.
CyclicGraph induced(const CyclicGraph& g, std::span<const std::size_t> kept);

struct DismantleResult {
    CyclicGraph core;
    /// Indices (into the input graph) of the surviving vertices.
    std::vector<std::size_t> core_vertices;
    /// rounds[i] holds the input-graph indices removed in round i.
    std::vector<std::vector<std::size_t>> rounds;
};

/// Removes all currently dominated vertices simultaneously, round after round,
/// until none is dominated. Throws InternalError if the survivors are not a
/// regular C_n^k.
DismantleResult dismantle(const CyclicGraph& g);

/// Graph after the first `rounds` dismantling rounds (vertex indices of the
/// input graph are returned through `kept`).
CyclicGraph partially_dismantle(const CyclicGraph& g, std::size_t rounds, std::vector<std::size_t>* kept = nullptr);

/// k/n of the dismantled core, cross-checked against omega/ell of the dynamics.
WindingFraction winding_fraction(const CyclicGraph& g);

/// Homotopy type of the clique complex.
HomotopyType homotopy_type(const CyclicGraph& g);

/// Neighbor lists of the underlying undirected graph.
std::vector<std::vector<std::size_t>> undirected_adjacency(const CyclicGraph& g);

}  // namespace vrellipse
