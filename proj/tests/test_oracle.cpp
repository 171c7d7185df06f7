#include <doctest.h>

#include <random>

#include "support.hpp"
#include "vrellipse/errors.hpp"

using namespace vrellipse;
using namespace vrellipse::testing;

namespace {

std::vector<std::vector<std::size_t>> cycle_graph(std::size_t n)
{
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        adj[i] = {(i + 1) % n, (i + n - 1) % n};
    }
    return adj;
}

std::vector<std::vector<std::size_t>> complete(std::size_t n)
{
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                adj[i].push_back(j);
            }
        }
    }
    return adj;
}

long euler(const FilteredComplex& c)
{
    long chi = 0;
    for (std::size_t d = 0; d <= c.max_dim(); ++d) {
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(c.count(d));
    }
    return chi;
}

}  // namespace

TEST_CASE("clique complexes")
{
    const FilteredComplex k4 = clique_complex(complete(4), 3);
    CHECK(k4.size() == 15);
    const FilteredComplex oct = clique_complex(undirected_adjacency(regular(6, 2)), 3);
    CHECK(oct.count(0) == 6);
    CHECK(oct.count(1) == 12);
    CHECK(oct.count(2) == 8);
    CHECK(oct.count(3) == 0);
    const FilteredComplex square = clique_complex(cycle_graph(4), 3);
    CHECK(square.count(1) == 4);
    CHECK(square.count(2) == 0);
    CHECK_THROWS_AS(clique_complex(complete(30), 4, 1000), CapacityError);
    CHECK_THROWS_AS(clique_complex(complete(3), 5), ParameterError);
}

TEST_CASE("betti numbers")
{
    CHECK(betti_numbers(clique_complex(undirected_adjacency(regular(6, 2)), 3), 2) == std::vector<std::size_t>{1, 0, 1});
    CHECK(betti_numbers(clique_complex(cycle_graph(4), 3), 2) == std::vector<std::size_t>{1, 1, 0});
    CHECK(clique_betti(regular(9, 3)) == std::vector<std::size_t>{1, 0, 2});
    CHECK(betti_numbers(clique_complex(complete(5), 3), 2) == std::vector<std::size_t>{1, 0, 0});
    // A truncated complex cannot answer in its top dimension.
    CHECK_THROWS_AS(betti_numbers(clique_complex(complete(5), 2), 2), ParameterError);
}

TEST_CASE("Euler characteristic")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const CyclicGraph g = random_cyclic_graph(rng, 1 + trial % 12);
        const FilteredComplex c = clique_complex(undirected_adjacency(g), 4);
        if (c.truncated()) {
            continue;
        }
        const auto b = betti_numbers(c, c.max_dim());
        long chi = 0;
        for (std::size_t d = 0; d < b.size(); ++d) {
            chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(b[d]);
        }
        CHECK(chi == euler(c));
    }
}

TEST_CASE("persistence pairs")
{
    // Two points at distance 1.5.
    const FilteredComplex two = rips_filtration({{0.0, 1.5}, {1.5, 0.0}}, 1);
    const auto pairs = persistent_pairs(two, 0);
    std::size_t essential = 0, finite = 0;
    for (const auto& p : pairs) {
        if (p.essential()) {
            ++essential;
        } else if (p.death > p.birth) {
            ++finite;
            CHECK(p.death == 1.5);
        }
    }
    CHECK(essential == 1);
    CHECK(finite == 1);

    // With every value equal, essential classes are the Betti numbers.
    const FilteredComplex oct = clique_complex(undirected_adjacency(regular(6, 2)), 3);
    std::vector<std::size_t> counts(3, 0);
    for (const auto& p : persistent_pairs(oct, 2)) {
        if (p.essential()) {
            ++counts[p.dim];
        }
    }
    CHECK(counts == betti_numbers(oct, 2));
}

TEST_CASE("pairing ignores the order of ties")
{
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<int> level(1, 4);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + trial % 10;
        std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                dist[i][j] = dist[j][i] = level(rng);
            }
        }
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::vector<double>> shuffled(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                shuffled[perm[i]][perm[j]] = dist[i][j];
            }
        }
        auto bars = [](const FilteredComplex& c) {
            std::vector<std::tuple<std::size_t, double, double>> out;
            for (const auto& p : persistent_pairs(c, 2)) {
                if (p.death > p.birth) {
                    out.emplace_back(p.dim, p.birth, p.death);
                }
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        CHECK(bars(rips_filtration(dist, 3)) == bars(rips_filtration(shuffled, 3)));
    }
}

TEST_CASE("induced rank")
{
    const FilteredComplex oct = clique_complex(undirected_adjacency(regular(6, 2)), 3);
    CHECK(induced_rank(oct, oct, 2) == 1);
    CHECK(induced_rank(oct, oct, 0) == 1);

    // Cone over the octahedron with apex 6.
    auto adj = undirected_adjacency(regular(6, 2));
    adj.emplace_back();
    for (std::size_t v = 0; v < 6; ++v) {
        adj[v].push_back(6);
        adj[6].push_back(v);
    }
    const FilteredComplex cone = clique_complex(adj, 4);
    std::vector<std::vector<std::size_t>> base = undirected_adjacency(regular(6, 2));
    base.emplace_back();
    const FilteredComplex octahedron = clique_complex(base, 3);
    CHECK(betti_numbers(cone, 2) == std::vector<std::size_t>{1, 0, 0});
    CHECK(induced_rank(octahedron, cone, 2) == 0);

    CHECK_THROWS_AS(induced_rank(cone, octahedron, 2), ParameterError);
}
