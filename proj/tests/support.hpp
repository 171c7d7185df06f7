#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "vrellipse/cyclic_graph.hpp"
#include "vrellipse/oracle.hpp"

namespace vrellipse::testing {

inline CyclicGraph with_even_positions(std::vector<std::size_t> degree)
{
    std::vector<CyclePosition> positions;
    for (std::size_t i = 0; i < degree.size(); ++i) {
        positions.emplace_back(static_cast<double>(i) / static_cast<double>(degree.size()));
    }
    return CyclicGraph(std::move(positions), std::move(degree));
}

// The three graphs drawn side by side: two dismantlable ones and C_9^3.
inline CyclicGraph fig_left() { return with_even_positions({2, 3, 2, 1, 1, 1}); }
inline CyclicGraph fig_middle() { return with_even_positions({2, 3, 3, 3, 2, 3, 3, 2}); }
inline CyclicGraph fig_right() { return regular(9, 3); }

/// A random valid cyclic graph on n vertices with random positions. Out-degrees
/// follow a lazy random walk and are rejected until the graph validates.
inline CyclicGraph random_cyclic_graph(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        std::vector<double> coords(n);
        for (auto& c : coords) {
            c = unit(rng);
        }
        std::sort(coords.begin(), coords.end());
        if (std::adjacent_find(coords.begin(), coords.end()) != coords.end()) {
            continue;
        }
        std::vector<CyclePosition> positions(coords.begin(), coords.end());
        std::vector<std::size_t> degree(n);
        std::uniform_int_distribution<std::size_t> start(0, n / 2);
        std::uniform_int_distribution<int> move(-1, 1);
        degree[0] = start(rng);
        for (std::size_t i = 1; i < n; ++i) {
            const long d = static_cast<long>(degree[i - 1]) + move(rng);
            degree[i] = static_cast<std::size_t>(std::max(0L, d));
        }
        CyclicGraph g(positions, degree);
        if (validate(g)) {
            return g;
        }
    }
}

/// Clique complex of g through dimension max_dim + 1, enough for Betti
/// numbers up to max_dim.
inline std::vector<std::size_t> clique_betti(const CyclicGraph& g, std::size_t max_dim = 2)
{
    return betti_numbers(clique_complex(undirected_adjacency(g), max_dim + 1), max_dim);
}

}  // namespace vrellipse::testing
