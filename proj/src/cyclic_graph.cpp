#include "vrellipse/cyclic_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "vrellipse/dynamics.hpp"
#include "vrellipse/errors.hpp"

namespace vrellipse {

// ---------------------------------------------------------------------------
// WindingFraction

WindingFraction::WindingFraction(std::uint64_t numerator, std::uint64_t denominator)
{
    if (denominator == 0) {
        throw ParameterError("WindingFraction: zero denominator");
    }
    const std::uint64_t g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
}

std::string WindingFraction::str() const
{
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const WindingFraction& lhs, const WindingFraction& rhs)
{
    // Denominators are graph sizes, far below 2^32, so the products fit.
    return lhs.num_ * rhs.den_ <=> rhs.num_ * lhs.den_;
}

// ---------------------------------------------------------------------------
// HomotopyType

HomotopyType HomotopyType::wedge(std::size_t count, std::size_t l)
{
    if (count == 0) {
        return point();
    }
    return HomotopyType(Kind::WedgeOfEvenSpheres, l, count);
}

std::size_t HomotopyType::sphere_dimension() const
{
    switch (kind_) {
    case Kind::OddSphere:
        return 2 * l_ + 1;
    case Kind::WedgeOfEvenSpheres:
        return 2 * l_;
    case Kind::Point:
        break;
    }
    return 0;
}

std::vector<std::size_t> HomotopyType::betti_signature(std::size_t max_dim) const
{
    std::vector<std::size_t> betti(max_dim + 1, 0);
    betti[0] = 1;
    const std::size_t dim = sphere_dimension();
    if (kind_ == Kind::WedgeOfEvenSpheres && dim == 0) {
        // count + 1 contractible components
        betti[0] = count_ + 1;
    } else if (kind_ != Kind::Point && dim <= max_dim) {
        betti[dim] += count_;
    }
    return betti;
}

std::string HomotopyType::str() const
{
    std::ostringstream out;
    switch (kind_) {
    case Kind::Point:
        out << "point";
        break;
    case Kind::OddSphere:
        out << "S^" << sphere_dimension();
        break;
    case Kind::WedgeOfEvenSpheres:
        if (count_ == 1) {
            out << "S^" << sphere_dimension();
        } else {
            out << "wedge^" << count_ << " S^" << sphere_dimension();
        }
        break;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// CyclicGraph

CyclicGraph::CyclicGraph(std::vector<CyclePosition> positions, std::vector<std::size_t> out_degree)
    : positions_(std::move(positions)), out_degree_(std::move(out_degree))
{
    if (positions_.size() != out_degree_.size()) {
        throw ParameterError("CyclicGraph: positions and out_degree differ in length");
    }
}

bool CyclicGraph::has_edge(std::size_t i, std::size_t j) const
{
    const std::size_t n = size();
    if (i >= n || j >= n || i == j) {
        return false;
    }
    const std::size_t offset = (j + n - i) % n;
    return offset <= out_degree_[i];
}

CyclicGraph regular(std::size_t n, std::size_t k)
{
    if (n == 0 || 2 * k >= n) {
        throw ParameterError("regular: need 0 <= k < n/2, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
    std::vector<CyclePosition> positions;
    positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        positions.emplace_back(static_cast<double>(i) / static_cast<double>(n));
    }
    return CyclicGraph(std::move(positions), std::vector<std::size_t>(n, k));
}

bool validate(const CyclicGraph& g)
{
    const std::size_t n = g.size();
    if (n == 0) {
        return false;
    }
    const auto& pos = g.positions();
    for (std::size_t i = 0; i < n; ++i) {
        const double c = pos[i].coord();
        if (!(c >= 0.0 && c < 1.0)) {
            return false;
        }
        if (i > 0 && !(pos[i - 1].coord() < c)) {
            return false;
        }
    }
    const auto& deg = g.out_degree();
    for (std::size_t i = 0; i < n; ++i) {
        if (deg[i] >= n) {
            return false;
        }
        // closure: the successor must reach at least as far as i does
        if (deg[(i + 1) % n] + 1 < deg[i]) {
            return false;
        }
    }
    // A 2-cycle is i -> i+t -> i with deg[i+t] >= n - t. Closure makes
    // deg[i+t] + t non-decreasing in t, so t = deg[i] is the only candidate.
    for (std::size_t i = 0; i < n; ++i) {
        if (deg[i] > 0 && deg[(i + deg[i]) % n] + deg[i] >= n) {
            return false;
        }
    }
    return true;
}

std::vector<std::size_t> in_degrees(const CyclicGraph& g)
{
    const std::size_t n = g.size();
    // difference array over the cyclic runs [i+1, i+deg]
    std::vector<std::int64_t> diff(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t d = g.out_degree(i);
        if (d == 0) {
            continue;
        }
        const std::size_t lo = i + 1;
        const std::size_t hi = i + d;  // inclusive, may wrap
        if (hi < n) {
            diff[lo] += 1;
            diff[hi + 1] -= 1;
        } else {
            if (lo < n) {
                diff[lo] += 1;
                diff[n] -= 1;
            }
            const std::size_t wrapped_lo = lo >= n ? lo - n : 0;
            diff[wrapped_lo] += 1;
            diff[hi - n + 1] -= 1;
        }
    }
    std::vector<std::size_t> in(n, 0);
    std::int64_t running = 0;
    for (std::size_t j = 0; j < n; ++j) {
        running += diff[j];
        in[j] = static_cast<std::size_t>(running);
    }
    return in;
}

namespace {

bool dominated_from_in_degrees(const std::vector<std::size_t>& in, std::size_t i)
{
    const std::size_t n = in.size();
    if (n < 2) {
        return false;
    }
    // Both sets are runs ending at v_i going counter-clockwise.
    return in[(i + 1) % n] == in[i] + 1;
}

}  // namespace

bool is_dominated(const CyclicGraph& g, std::size_t i)
{
    if (i >= g.size()) {
        throw ParameterError("is_dominated: vertex out of range");
    }
    return dominated_from_in_degrees(in_degrees(g), i);
}

CyclicGraph induced(const CyclicGraph& g, std::span<const std::size_t> kept)
{
    const std::size_t n = g.size();
    std::vector<std::size_t> prefix(n + 1, 0);
    std::vector<char> alive(n, 0);
    for (std::size_t idx = 0; idx < kept.size(); ++idx) {
        const std::size_t v = kept[idx];
        if (v >= n || (idx > 0 && kept[idx - 1] >= v)) {
            throw ParameterError("induced: vertex list must be strictly increasing indices");
        }
        alive[v] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        prefix[i + 1] = prefix[i] + static_cast<std::size_t>(alive[i]);
    }
    // number of kept vertices in the half-open index range [lo, hi), hi <= 2n
    auto count = [&](std::size_t lo, std::size_t hi) {
        if (hi <= n) {
            return prefix[hi] - prefix[lo];
        }
        return (prefix[n] - prefix[lo]) + prefix[hi - n];
    };
    std::vector<CyclePosition> positions;
    std::vector<std::size_t> degree;
    positions.reserve(kept.size());
    degree.reserve(kept.size());
    for (const std::size_t v : kept) {
        positions.push_back(g.position(v));
        const std::size_t lo = v + 1;
        const std::size_t hi = v + g.out_degree(v) + 1;
        degree.push_back(lo >= n ? prefix[hi - n] - prefix[lo - n] : count(lo, hi));
    }
    return CyclicGraph(std::move(positions), std::move(degree));
}

namespace {

struct RoundState {
    CyclicGraph graph;
    std::vector<std::size_t> labels;  // original indices
};

/// One simultaneous removal round. Returns false if nothing was dominated.
bool dismantle_round(RoundState& state, std::vector<std::size_t>* removed)
{
    const std::size_t n = state.graph.size();
    const auto in = in_degrees(state.graph);
    std::vector<std::size_t> kept;
    kept.reserve(n);
    std::vector<std::size_t> gone;
    for (std::size_t i = 0; i < n; ++i) {
        if (dominated_from_in_degrees(in, i)) {
            gone.push_back(state.labels[i]);
        } else {
            kept.push_back(i);
        }
    }
    if (gone.empty()) {
        return false;
    }
    if (kept.empty()) {
        throw InternalError("dismantle: every vertex reported dominated");
    }
    std::vector<std::size_t> labels;
    labels.reserve(kept.size());
    for (const std::size_t i : kept) {
        labels.push_back(state.labels[i]);
    }
    state.graph = induced(state.graph, kept);
    state.labels = std::move(labels);
    if (removed != nullptr) {
        *removed = std::move(gone);
    }
    return true;
}

RoundState initial_state(const CyclicGraph& g)
{
    RoundState state{g, std::vector<std::size_t>(g.size())};
    std::iota(state.labels.begin(), state.labels.end(), std::size_t{0});
    return state;
}

}  // namespace

DismantleResult dismantle(const CyclicGraph& g)
{
    if (!validate(g)) {
        throw ParameterError("dismantle: input is not a valid cyclic graph");
    }
    RoundState state = initial_state(g);
    DismantleResult result;
    std::vector<std::size_t> removed;
    while (dismantle_round(state, &removed)) {
        result.rounds.push_back(std::move(removed));
        removed.clear();
    }
    const auto& deg = state.graph.out_degree();
    for (const std::size_t d : deg) {
        if (d != deg.front()) {
            throw InternalError("dismantle: core has non-uniform out-degree");
        }
    }
    if (2 * deg.front() >= deg.size()) {
        throw InternalError("dismantle: core is not of the form C_n^k with k < n/2");
    }
    result.core = std::move(state.graph);
    result.core_vertices = std::move(state.labels);
    return result;
}

CyclicGraph partially_dismantle(const CyclicGraph& g, std::size_t rounds, std::vector<std::size_t>* kept)
{
    if (!validate(g)) {
        throw ParameterError("partially_dismantle: input is not a valid cyclic graph");
    }
    RoundState state = initial_state(g);
    for (std::size_t i = 0; i < rounds; ++i) {
        if (!dismantle_round(state, nullptr)) {
            break;
        }
    }
    if (kept != nullptr) {
        *kept = state.labels;
    }
    return state.graph;
}

WindingFraction winding_fraction(const CyclicGraph& g)
{
    const DismantleResult d = dismantle(g);
    const WindingFraction from_core(d.core.out_degree(0), d.core.size());
    const OrbitReport orbits = periodic_orbits(g);
    const WindingFraction from_dynamics(orbits.winding, orbits.length);
    if (!(from_core == from_dynamics)) {
        throw InternalError("winding_fraction: dismantling gives " + from_core.str() + " but dynamics give " +
                            from_dynamics.str());
    }
    return from_core;
}

HomotopyType homotopy_type(const CyclicGraph& g)
{
    if (g.size() <= 1) {
        return HomotopyType::point();
    }
    const WindingFraction wf = winding_fraction(g);
    const std::uint64_t p = wf.numerator();
    const std::uint64_t q = wf.denominator();
    if (q == 2 * p + 1) {
        const OrbitReport orbits = periodic_orbits(g);
        return HomotopyType::wedge(orbits.count - 1, p);
    }
    // largest l with l/(2l+1) < p/q, i.e. l < p/(q-2p)
    const std::uint64_t l = p / (q - 2 * p);
    return HomotopyType::odd_sphere(l);
}

std::vector<std::vector<std::size_t>> undirected_adjacency(const CyclicGraph& g)
{
    const std::size_t n = g.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 1; t <= g.out_degree(i); ++t) {
            const std::size_t j = (i + t) % n;
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return adj;
}

}  // namespace vrellipse
