#include "vrellipse/vietoris_rips.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vrellipse/errors.hpp"

namespace vrellipse {

namespace {

constexpr double kBoundaryEquality = 1e-12;
constexpr double kBoundaryWarning = 1e-9;

bool within(double d, double r, Convention c)
{
    return c == Convention::Less ? d < r : d <= r;
}

}  // namespace

const char* to_string(Convention c)
{
    return c == Convention::Less ? "<" : "<=";
}

Convention parse_convention(const std::string& text)
{
    if (text == "<" || text == "less") {
        return Convention::Less;
    }
    if (text == "<=" || text == "lesseq") {
        return Convention::LessEq;
    }
    throw ParameterError("unknown convention '" + text + "' (expected <, less, <=, lesseq)");
}

std::vector<EllipsePoint> sort_cyclically(std::span<const EllipsePoint> points)
{
    std::vector<EllipsePoint> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const EllipsePoint& l, const EllipsePoint& r) { return l.t() < r.t(); });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].t() == sorted[i - 1].t()) {
            throw ParameterError("duplicate sample point at t = " + std::to_string(sorted[i].t()));
        }
    }
    return sorted;
}

CyclicGraph vr_graph(const EllipseModel& m, std::span<const EllipsePoint> points, double r, Convention c)
{
    if (!(r > 0.0 && r < 2.0)) {
        throw ParameterError("vr_graph: need 0 < r < 2, got " + std::to_string(r));
    }
    if (points.empty()) {
        throw ParameterError("vr_graph: empty point set");
    }
    const auto sorted = sort_cyclically(points);
    const std::size_t n = sorted.size();
    std::vector<CyclePosition> positions;
    std::vector<std::size_t> degree(n, 0);
    positions.reserve(n);
    // Distance from p increases along the arc up to h^{-1}(p), so the out-run
    // is a prefix of the points in that arc. Runs shrink by at most one from
    // one vertex to the next, so each scan resumes where the last one ended.
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const EllipsePoint& p = sorted[i];
        positions.push_back(p.cycle());
        const double reach = param_offset(p, inverse_antipodal_normal(m, p));
        auto joins = [&](std::size_t step) {
            const EllipsePoint& q = sorted[(i + step) % n];
            return param_offset(p, q) < reach && within(distance(p, q), r, c);
        };
        k = k > 0 ? k - 1 : 0;
        if (k > 0 && !joins(k)) {
            k = 0;
        }
        while (k + 1 < n && joins(k + 1)) {
            ++k;
        }
        degree[i] = k;
    }
    CyclicGraph g(std::move(positions), std::move(degree));
    if (!validate(g)) {
        throw InternalError("vr_graph: VR graph at r = " + std::to_string(r) + " is not cyclic");
    }
    return g;
}

SampleClassification classify_sample(const EllipseModel& m, std::span<const EllipsePoint> points, double r,
                                     Convention c)
{
    SampleClassification out;
    out.graph = vr_graph(m, points, r, c);
    out.wf = winding_fraction(out.graph);
    out.type = homotopy_type(out.graph);
    out.orbits = periodic_orbits(out.graph);
    return out;
}

FilteredComplex vr_complex(const EllipseModel& m, std::span<const EllipsePoint> points, double r, Convention c,
                           std::size_t max_dim)
{
    return clique_complex(undirected_adjacency(vr_graph(m, points, r, c)), max_dim);
}

EllipseHomotopy ellipse_homotopy(const EllipseModel& m, double r, Convention c)
{
    if (!(r > 0.0)) {
        throw ParameterError("ellipse_homotopy: need r > 0");
    }
    const CriticalRadii radii = critical_radii(m);
    const bool at_r1 = std::abs(r - radii.r1) <= kBoundaryEquality;
    const bool at_r2 = std::abs(r - radii.r2) <= kBoundaryEquality;
    if (r > radii.r2 && !at_r2) {
        throw UnsupportedRangeError("ellipse_homotopy: no closed form above r2 = " + std::to_string(radii.r2));
    }
    EllipseHomotopy out;
    out.near_boundary = std::min(std::abs(r - radii.r1), std::abs(r - radii.r2)) <= kBoundaryWarning;
    const auto sphere = HomotopyType::odd_sphere(0);
    if (c == Convention::Less) {
        out.type = (r <= radii.r1 || at_r1) ? sphere : HomotopyType::wedge(1, 1);
        return out;
    }
    if (m.is_circle() && at_r1) {
        throw UnsupportedRangeError("ellipse_homotopy: the circle at r = sqrt(3) with <= is an uncountable wedge");
    }
    if (at_r1) {
        out.type = HomotopyType::wedge(1, 1);
    } else if (r < radii.r1) {
        out.type = sphere;
    } else if (at_r2) {
        out.type = HomotopyType::wedge(3, 1);
    } else {
        out.type = HomotopyType::wedge(5, 1);
    }
    return out;
}

Barcode ellipse_barcode(const EllipseModel& m, Convention c)
{
    const CriticalRadii radii = critical_radii(m);
    Barcode bar;
    const bool less = c == Convention::Less;
    bar.intervals.push_back({1, 0.0, radii.r1, !less, less});
    if (!m.is_circle()) {
        bar.intervals.push_back({2, radii.r1, radii.r2, !less, true});
        if (!less) {
            bar.diagonal.push_back({2, radii.r1, radii.r2, 4});
        }
    }
    return bar;
}

Barcode sample_barcode(const EllipseModel& m, std::span<const EllipsePoint> points, Convention c, std::size_t max_dim,
                       std::size_t cap)
{
    (void)m;
    if (points.size() > cap) {
        throw CapacityError("sample_barcode: " + std::to_string(points.size()) + " points exceed the cap of " +
                            std::to_string(cap));
    }
    const auto sorted = sort_cyclically(points);
    const FilteredComplex filtration = rips_filtration(distance_matrix(sorted), max_dim + 1);
    const bool less = c == Convention::Less;
    Barcode bar;
    for (const auto& pair : persistent_pairs(filtration, max_dim)) {
        if (pair.birth == pair.death) {
            continue;
        }
        bar.intervals.push_back({pair.dim, pair.birth, pair.death, !less, less && !pair.essential()});
    }
    return bar;
}

std::size_t rank_across(const EllipseModel& m, std::span<const EllipsePoint> points, double r, double r_tilde,
                        Convention c)
{
    if (!(r <= r_tilde)) {
        throw ParameterError("rank_across: need r <= r_tilde");
    }
    const CyclicGraph g = vr_graph(m, points, r, c);
    const CyclicGraph g_tilde = vr_graph(m, points, r_tilde, c);
    const WindingFraction third(1, 3);
    if (!(winding_fraction(g) == third) || !(winding_fraction(g_tilde) == third)) {
        throw ParameterError("rank_across: both scales must have winding fraction 1/3");
    }
    std::vector<std::size_t> identity(g.size());
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    return orbits_hit(g, g_tilde, identity) - 1;
}

std::vector<std::vector<double>> distance_matrix(std::span<const EllipsePoint> points)
{
    const std::size_t n = points.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            dist[i][j] = dist[j][i] = distance(points[i], points[j]);
        }
    }
    return dist;
}

}  // namespace vrellipse
