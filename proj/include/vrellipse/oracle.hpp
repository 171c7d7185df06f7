#pragma once

// Brute-force homology over GF(2): clique enumeration, Betti numbers and
// persistence by column reduction. Meant for small instances only.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace vrellipse {

inline constexpr std::size_t kDefaultSimplexCap = 2'000'000;

struct Simplex {
    std::vector<std::uint32_t> vertices;  // strictly increasing
    double value = 0.0;

    [[nodiscard]] std::size_t dim() const { return vertices.size() - 1; }
};

/// Simplices sorted by (value, dimension, vertices). The constructor checks
/// that every face is present with a value no larger than its coface.
class FilteredComplex {
public:
    FilteredComplex() = default;
    /// `truncated` records that cliques above max_dim exist but were not listed.
    FilteredComplex(std::vector<Simplex> simplices, std::size_t max_dim, bool truncated = false);

    [[nodiscard]] const std::vector<Simplex>& simplices() const { return simplices_; }
    [[nodiscard]] std::size_t size() const { return simplices_.size(); }
    [[nodiscard]] std::size_t max_dim() const { return max_dim_; }
    [[nodiscard]] bool truncated() const { return truncated_; }
    /// Number of simplices of the given dimension.
    [[nodiscard]] std::size_t count(std::size_t dim) const;
    [[nodiscard]] std::optional<std::size_t> index_of(std::span<const std::uint32_t> vertices) const;

private:
    struct VertexHash {
        std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept;
    };

    std::vector<Simplex> simplices_;
    std::size_t max_dim_ = 0;
    bool truncated_ = false;
    std::unordered_map<std::vector<std::uint32_t>, std::size_t, VertexHash> index_;
};

/// All cliques with at most max_dim + 1 vertices, every simplex at value 0.
/// Throws CapacityError past `cap` simplices.
FilteredComplex clique_complex(const std::vector<std::vector<std::size_t>>& adjacency, std::size_t max_dim,
                               std::size_t cap = kDefaultSimplexCap);

/// Rips filtration of a symmetric distance matrix: a simplex enters at its
/// diameter. Only simplices of diameter <= threshold are listed.
FilteredComplex rips_filtration(const std::vector<std::vector<double>>& dist, std::size_t max_dim,
                                double threshold = std::numeric_limits<double>::infinity(),
                                std::size_t cap = kDefaultSimplexCap);

/// Unreduced Betti numbers of the whole complex in dimensions 0..max_dim.
/// Needs simplices through max_dim + 1 unless the complex is not truncated.
std::vector<std::size_t> betti_numbers(const FilteredComplex& c, std::size_t max_dim);

struct PersistencePair {
    std::size_t dim = 0;
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();  // infinite for essential classes

    [[nodiscard]] bool essential() const { return death == std::numeric_limits<double>::infinity(); }
};

/// Finite pairs (including zero-length ones) and essential classes in
/// dimensions 0..max_dim.
std::vector<PersistencePair> persistent_pairs(const FilteredComplex& c, std::size_t max_dim);

/// Rank of H_dim(small) -> H_dim(big) for a subcomplex small of big.
/// Filtration values are ignored. Throws ParameterError if small is not a
/// subcomplex of big.
std::size_t induced_rank(const FilteredComplex& small, const FilteredComplex& big, std::size_t dim);

}  // namespace vrellipse
