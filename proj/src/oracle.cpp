#include "vrellipse/oracle.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "vrellipse/errors.hpp"

namespace vrellipse {

std::size_t FilteredComplex::VertexHash::operator()(const std::vector<std::uint32_t>& v) const noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const std::uint32_t x : v) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

FilteredComplex::FilteredComplex(std::vector<Simplex> simplices, std::size_t max_dim, bool truncated)
    : simplices_(std::move(simplices)), max_dim_(max_dim), truncated_(truncated)
{
    for (const auto& s : simplices_) {
        if (s.vertices.empty() || !std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
            std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end()) {
            throw ParameterError("FilteredComplex: simplex vertices must be nonempty and strictly increasing");
        }
        if (s.dim() > max_dim_) {
            throw ParameterError("FilteredComplex: simplex above max_dim");
        }
    }
    std::sort(simplices_.begin(), simplices_.end(), [](const Simplex& l, const Simplex& r) {
        return std::make_tuple(l.value, l.vertices.size(), std::cref(l.vertices)) <
               std::make_tuple(r.value, r.vertices.size(), std::cref(r.vertices));
    });
    index_.reserve(simplices_.size());
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
        if (!index_.emplace(simplices_[i].vertices, i).second) {
            throw ParameterError("FilteredComplex: duplicate simplex");
        }
    }
    std::vector<std::uint32_t> face;
    for (const auto& s : simplices_) {
        if (s.vertices.size() < 2) {
            continue;
        }
        for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
            face.assign(s.vertices.begin(), s.vertices.end());
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            const auto it = index_.find(face);
            if (it == index_.end()) {
                throw ParameterError("FilteredComplex: missing face");
            }
            if (simplices_[it->second].value > s.value) {
                throw ParameterError("FilteredComplex: face enters after its coface");
            }
        }
    }
}

std::size_t FilteredComplex::count(std::size_t dim) const
{
    return static_cast<std::size_t>(
        std::count_if(simplices_.begin(), simplices_.end(), [dim](const Simplex& s) { return s.dim() == dim; }));
}

std::optional<std::size_t> FilteredComplex::index_of(std::span<const std::uint32_t> vertices) const
{
    const auto it = index_.find(std::vector<std::uint32_t>(vertices.begin(), vertices.end()));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

namespace {

/// Ordered backtracking over cliques. `weight(u, v)` is the edge value, or
/// nullopt when u, v are not adjacent.
template <class Neighbors, class Weight>
FilteredComplex enumerate_cliques(std::size_t n, std::size_t max_dim, std::size_t cap, Neighbors&& neighbors,
                                  Weight&& weight)
{
    if (max_dim > 4) {
        throw ParameterError("clique enumeration is capped at dimension 4");
    }
    std::vector<Simplex> out;
    bool truncated = false;
    std::vector<std::uint32_t> clique;

    auto emit = [&](double value) {
        if (out.size() >= cap) {
            throw CapacityError("clique enumeration exceeded " + std::to_string(cap) + " simplices");
        }
        out.push_back({clique, value});
    };

    auto extend = [&](auto&& self, const std::vector<std::size_t>& candidates, double value) -> void {
        emit(value);
        if (clique.size() == max_dim + 1) {
            truncated = truncated || !candidates.empty();
            return;
        }
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            const std::size_t c = candidates[k];
            double next_value = value;
            for (const std::uint32_t u : clique) {
                next_value = std::max(next_value, *weight(u, c));
            }
            std::vector<std::size_t> next;
            const auto& nc = neighbors(c);
            std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(k) + 1, candidates.end(),
                                  nc.begin(), nc.end(), std::back_inserter(next));
            clique.push_back(static_cast<std::uint32_t>(c));
            self(self, next, next_value);
            clique.pop_back();
        }
    };

    for (std::size_t v = 0; v < n; ++v) {
        const auto& nv = neighbors(v);
        std::vector<std::size_t> candidates;
        std::copy_if(nv.begin(), nv.end(), std::back_inserter(candidates), [v](std::size_t u) { return u > v; });
        clique.assign(1, static_cast<std::uint32_t>(v));
        extend(extend, candidates, 0.0);
    }
    return FilteredComplex(std::move(out), max_dim, truncated);
}

void add_column(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& source)
{
    std::vector<std::uint32_t> sum;
    sum.reserve(target.size() + source.size());
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(sum));
    target.swap(sum);
}

struct Reduction {
    std::vector<std::int64_t> low;    // column -> pivot row, -1 if the column reduced to zero
    std::vector<std::int64_t> owner;  // row -> column whose pivot it is, -1 if none
};

/// Column reduction with clearing, over dimensions 1..top_dim+1.
Reduction reduce(const FilteredComplex& c, std::size_t top_dim)
{
    const auto& simplices = c.simplices();
    const std::size_t n = simplices.size();
    Reduction red{std::vector<std::int64_t>(n, -1), std::vector<std::int64_t>(n, -1)};
    std::vector<std::vector<std::uint32_t>> stored(n);
    std::vector<char> cleared(n, 0);
    std::vector<std::uint32_t> face;
    const std::size_t highest = std::min(c.max_dim(), top_dim + 1);
    for (std::size_t d = highest; d >= 1; --d) {
        for (std::size_t j = 0; j < n; ++j) {
            if (simplices[j].dim() != d || cleared[j]) {
                continue;
            }
            std::vector<std::uint32_t> column;
            column.reserve(d + 1);
            for (std::size_t drop = 0; drop <= d; ++drop) {
                face.assign(simplices[j].vertices.begin(), simplices[j].vertices.end());
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                column.push_back(static_cast<std::uint32_t>(*c.index_of(face)));
            }
            std::sort(column.begin(), column.end());
            while (!column.empty() && red.owner[column.back()] != -1) {
                add_column(column, stored[static_cast<std::size_t>(red.owner[column.back()])]);
            }
            if (!column.empty()) {
                const std::uint32_t pivot = column.back();
                red.low[j] = pivot;
                red.owner[pivot] = static_cast<std::int64_t>(j);
                cleared[pivot] = 1;
                stored[j] = std::move(column);
            }
        }
    }
    return red;
}

void require_depth(const FilteredComplex& c, std::size_t max_dim, const char* who)
{
    if (c.truncated() && c.max_dim() < max_dim + 1) {
        throw ParameterError(std::string(who) + ": complex lists simplices only through dimension " +
                             std::to_string(c.max_dim()) + ", need " + std::to_string(max_dim + 1));
    }
}

}  // namespace

FilteredComplex clique_complex(const std::vector<std::vector<std::size_t>>& adjacency, std::size_t max_dim,
                               std::size_t cap)
{
    const std::size_t n = adjacency.size();
    std::vector<std::vector<std::size_t>> adj(adjacency);
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    for (std::size_t v = 0; v < n; ++v) {
        for (const std::size_t u : adj[v]) {
            if (u >= n || u == v || !std::binary_search(adj[u].begin(), adj[u].end(), v)) {
                throw ParameterError("clique_complex: adjacency must be symmetric and loop-free");
            }
        }
    }
    return enumerate_cliques(
        n, max_dim, cap, [&](std::size_t v) -> const std::vector<std::size_t>& { return adj[v]; },
        [](std::size_t, std::size_t) { return std::optional<double>(0.0); });
}

FilteredComplex rips_filtration(const std::vector<std::vector<double>>& dist, std::size_t max_dim, double threshold,
                                std::size_t cap)
{
    const std::size_t n = dist.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (dist[v].size() != n) {
            throw ParameterError("rips_filtration: distance matrix is not square");
        }
        for (std::size_t u = 0; u < n; ++u) {
            if (u != v && dist[v][u] <= threshold) {
                adj[v].push_back(u);
            }
        }
    }
    return enumerate_cliques(
        n, max_dim, cap, [&](std::size_t v) -> const std::vector<std::size_t>& { return adj[v]; },
        [&](std::size_t u, std::size_t v) { return std::optional<double>(dist[u][v]); });
}

std::vector<std::size_t> betti_numbers(const FilteredComplex& c, std::size_t max_dim)
{
    std::vector<std::size_t> betti(max_dim + 1, 0);
    for (const auto& pair : persistent_pairs(c, max_dim)) {
        if (pair.essential()) {
            ++betti[pair.dim];
        }
    }
    return betti;
}

std::vector<PersistencePair> persistent_pairs(const FilteredComplex& c, std::size_t max_dim)
{
    require_depth(c, max_dim, "persistent_pairs");
    const Reduction red = reduce(c, max_dim);
    const auto& simplices = c.simplices();
    std::vector<PersistencePair> pairs;
    for (std::size_t j = 0; j < simplices.size(); ++j) {
        const std::size_t dim = simplices[j].dim();
        if (red.low[j] >= 0) {
            const auto& born = simplices[static_cast<std::size_t>(red.low[j])];
            if (born.dim() <= max_dim) {
                pairs.push_back({born.dim(), born.value, simplices[j].value});
            }
        } else if (dim <= max_dim && red.owner[j] == -1) {
            pairs.push_back({dim, simplices[j].value, std::numeric_limits<double>::infinity()});
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const PersistencePair& l, const PersistencePair& r) {
        return std::tie(l.dim, l.birth, l.death) < std::tie(r.dim, r.birth, r.death);
    });
    return pairs;
}

std::size_t induced_rank(const FilteredComplex& small, const FilteredComplex& big, std::size_t dim)
{
    std::vector<Simplex> merged;
    merged.reserve(big.size());
    for (const auto& s : big.simplices()) {
        merged.push_back({s.vertices, small.index_of(s.vertices) ? 0.0 : 1.0});
    }
    for (const auto& s : small.simplices()) {
        if (!big.index_of(s.vertices)) {
            throw ParameterError("induced_rank: small complex is not contained in big complex");
        }
    }
    const FilteredComplex pair(std::move(merged), big.max_dim(), big.truncated());
    std::size_t rank = 0;
    for (const auto& p : persistent_pairs(pair, dim)) {
        if (p.dim == dim && p.birth == 0.0 && p.essential()) {
            ++rank;
        }
    }
    return rank;
}

}  // namespace vrellipse
