#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vrellipse/cyclic_graph.hpp"

namespace vrellipse {

/// Periodic orbits of f. Every orbit has the same length and winding number.
struct OrbitReport {
    /// Each orbit starts at its smallest vertex and follows f; orbits are
    /// sorted by first vertex.
    std::vector<std::vector<std::size_t>> orbits;
    std::size_t length = 0;
    std::size_t winding = 0;
    std::size_t count = 0;
};

enum class VertexClass { Periodic, Fast, Slow };

const char* to_string(VertexClass c);

/// f(v): the clockwise-most vertex of the closed out-neighborhood.
std::size_t step(const CyclicGraph& g, std::size_t v);

/// Clockwise distance travelled by v, f(v), ..., f^m(v).
double gamma_m(const CyclicGraph& g, std::size_t v, std::size_t m);

/// All periodic orbits. Throws InternalError if lengths or windings disagree,
/// or a loop's winding is not within 1e-9 of an integer.
OrbitReport periodic_orbits(const CyclicGraph& g);

/// Periodic / fast / slow for every vertex, relative to wf(g) = p/q.
std::vector<VertexClass> classify_vertices(const CyclicGraph& g);

/// Edge-preserving (or collapsing), weakly cyclic-order preserving, and not
/// constant when g has a directed cycle.
bool is_cyclic_homomorphism(const CyclicGraph& g, const CyclicGraph& g_tilde, std::span<const std::size_t> h);

/// Number of periodic orbits of g_tilde hit by h. Requires a cyclic
/// homomorphism and wf(g) = wf(g_tilde) = l/(2l+1); throws ParameterError
/// otherwise. The map induced on H_{2l} has rank orbits_hit - 1.
///
/// Each orbit of g is pushed through h elementwise and iterated n_tilde times
/// under f~. If the images of one orbit land in different orbits the instance
/// is reported as InternalError rather than resolved.
std::size_t orbits_hit(const CyclicGraph& g, const CyclicGraph& g_tilde, std::span<const std::size_t> h);

}  // namespace vrellipse
