#include "vrellipse/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "vrellipse/errors.hpp"

namespace vrellipse {

namespace {

constexpr double kWindingTolerance = 1e-9;
constexpr double kFastTolerance = 1e-9;

std::vector<std::size_t> step_table(const CyclicGraph& g)
{
    const std::size_t n = g.size();
    std::vector<std::size_t> f(n);
    for (std::size_t v = 0; v < n; ++v) {
        f[v] = (v + g.out_degree(v)) % n;
    }
    return f;
}

/// Cycles of the functional graph v -> f[v], each rotated to start at its
/// minimum, sorted.
std::vector<std::vector<std::size_t>> functional_cycles(const std::vector<std::size_t>& f)
{
    const std::size_t n = f.size();
    enum : unsigned char { Fresh, OnPath, Done };
    std::vector<unsigned char> state(n, Fresh);
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<std::size_t> path;
    for (std::size_t start = 0; start < n; ++start) {
        if (state[start] != Fresh) {
            continue;
        }
        path.clear();
        std::size_t v = start;
        while (state[v] == Fresh) {
            state[v] = OnPath;
            path.push_back(v);
            v = f[v];
        }
        if (state[v] == OnPath) {
            auto first = std::find(path.begin(), path.end(), v);
            std::vector<std::size_t> cycle(first, path.end());
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
            cycles.push_back(std::move(cycle));
        }
        for (const std::size_t u : path) {
            state[u] = Done;
        }
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

std::size_t orbit_of(const std::vector<std::vector<std::size_t>>& orbits, std::size_t v)
{
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        if (std::find(orbits[i].begin(), orbits[i].end(), v) != orbits[i].end()) {
            return i;
        }
    }
    throw InternalError("orbits_hit: vertex " + std::to_string(v) + " is not periodic after n steps");
}

}  // namespace

const char* to_string(VertexClass c)
{
    switch (c) {
    case VertexClass::Periodic:
        return "periodic";
    case VertexClass::Fast:
        return "fast";
    case VertexClass::Slow:
        return "slow";
    }
    return "?";
}

std::size_t step(const CyclicGraph& g, std::size_t v)
{
    if (v >= g.size()) {
        throw ParameterError("step: vertex out of range");
    }
    return (v + g.out_degree(v)) % g.size();
}

double gamma_m(const CyclicGraph& g, std::size_t v, std::size_t m)
{
    if (v >= g.size()) {
        throw ParameterError("gamma_m: vertex out of range");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t next = step(g, v);
        total += cw_dist(g.position(v), g.position(next));
        v = next;
    }
    return total;
}

OrbitReport periodic_orbits(const CyclicGraph& g)
{
    if (g.empty()) {
        throw ParameterError("periodic_orbits: empty graph");
    }
    OrbitReport report;
    report.orbits = functional_cycles(step_table(g));
    report.count = report.orbits.size();
    for (std::size_t i = 0; i < report.orbits.size(); ++i) {
        const auto& orbit = report.orbits[i];
        double loop = 0.0;
        for (std::size_t j = 0; j < orbit.size(); ++j) {
            loop += cw_dist(g.position(orbit[j]), g.position(orbit[(j + 1) % orbit.size()]));
        }
        const double rounded = std::round(loop);
        if (std::abs(loop - rounded) > kWindingTolerance) {
            throw InternalError("periodic_orbits: loop winding " + std::to_string(loop) + " is not an integer");
        }
        const auto winding = static_cast<std::size_t>(rounded);
        if (i == 0) {
            report.length = orbit.size();
            report.winding = winding;
        } else if (orbit.size() != report.length || winding != report.winding) {
            throw InternalError("periodic_orbits: orbits disagree in length or winding");
        }
    }
    return report;
}

std::vector<VertexClass> classify_vertices(const CyclicGraph& g)
{
    const WindingFraction wf = winding_fraction(g);
    const OrbitReport report = periodic_orbits(g);
    std::vector<VertexClass> classes(g.size(), VertexClass::Slow);
    for (const auto& orbit : report.orbits) {
        for (const std::size_t v : orbit) {
            classes[v] = VertexClass::Periodic;
        }
    }
    const auto p = static_cast<double>(wf.numerator());
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (classes[v] == VertexClass::Periodic) {
            continue;
        }
        if (gamma_m(g, v, wf.denominator()) > p + kFastTolerance) {
            classes[v] = VertexClass::Fast;
        }
    }
    return classes;
}

bool is_cyclic_homomorphism(const CyclicGraph& g, const CyclicGraph& g_tilde, std::span<const std::size_t> h)
{
    const std::size_t n = g.size();
    const std::size_t nt = g_tilde.size();
    if (h.size() != n || n == 0 || nt == 0) {
        return false;
    }
    for (const std::size_t image : h) {
        if (image >= nt) {
            return false;
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t t = 1; t <= g.out_degree(v); ++t) {
            const std::size_t u = (v + t) % n;
            if (h[v] != h[u] && !g_tilde.has_edge(h[v], h[u])) {
                return false;
            }
        }
    }
    // Weak order preservation: walking once around g, the image walks
    // clockwise at most once around g_tilde.
    std::size_t turn = 0;
    for (std::size_t v = 0; v < n; ++v) {
        turn += (h[(v + 1) % n] + nt - h[v]) % nt;
    }
    if (turn != 0 && turn != nt) {
        return false;
    }
    if (turn == 0 && periodic_orbits(g).winding > 0) {
        return false;  // constant on a graph with a directed cycle
    }
    return true;
}

std::size_t orbits_hit(const CyclicGraph& g, const CyclicGraph& g_tilde, std::span<const std::size_t> h)
{
    if (!validate(g) || !validate(g_tilde)) {
        throw ParameterError("orbits_hit: invalid cyclic graph");
    }
    if (!is_cyclic_homomorphism(g, g_tilde, h)) {
        throw ParameterError("orbits_hit: map is not a cyclic homomorphism");
    }
    const WindingFraction wf = winding_fraction(g);
    const WindingFraction wf_tilde = winding_fraction(g_tilde);
    if (!(wf == wf_tilde)) {
        throw ParameterError("orbits_hit: winding fractions differ (" + wf.str() + " vs " + wf_tilde.str() + ")");
    }
    if (wf.denominator() != 2 * wf.numerator() + 1) {
        throw ParameterError("orbits_hit: winding fraction " + wf.str() + " is not of the form l/(2l+1)");
    }
    const OrbitReport source = periodic_orbits(g);
    const OrbitReport target = periodic_orbits(g_tilde);
    const auto f = step_table(g_tilde);
    std::set<std::size_t> hit;
    for (const auto& orbit : source.orbits) {
        std::set<std::size_t> landed;
        for (const std::size_t v : orbit) {
            std::size_t w = h[v];
            for (std::size_t i = 0; i < g_tilde.size(); ++i) {
                w = f[w];
            }
            landed.insert(orbit_of(target.orbits, w));
        }
        if (landed.size() != 1) {
            throw InternalError("orbits_hit: image of one orbit spreads over " + std::to_string(landed.size()) +
                                " orbits");
        }
        hit.insert(*landed.begin());
    }
    return hit.size();
}

}  // namespace vrellipse
