#include "vrellipse/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "vrellipse/dynamics.hpp"
#include "vrellipse/errors.hpp"
#include "vrellipse/vietoris_rips.hpp"

namespace vrellipse {

namespace {

using Triple = std::array<EllipsePoint, 3>;

constexpr std::size_t kProbeGrid = 64;
constexpr std::size_t kMaxChain = 200000;
constexpr int kMaxBisections = 100;
// Triangles only need to close far below the gaps the construction relies on.
constexpr double kTriangleTolerance = 1e-11;

double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// a < x < b clockwise.
bool strictly_between(const EllipsePoint& a, const EllipsePoint& x, const EllipsePoint& b)
{
    return in_cyclic_order(a.cycle(), x.cycle(), b.cycle(), true);
}

/// Root of an increasing predicate on [lo, hi]: the smallest v where it holds.
template <class Pred>
double threshold(Pred&& holds, double lo, double hi, double tol)
{
    for (int i = 0; i < kMaxBisections && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (holds(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

class Builder {
public:
    Builder(const SamplerSpec& spec) : spec_(spec), m_(spec.a), r_(spec.r), z_(z_points(m_, spec.r)) {}

    AdversarialSample run();

private:
    Triple triple(const EllipsePoint& p) const { return inscribed_triangle(m_, p, kTriangleTolerance).vertices; }

    /// Largest of the three vertex-wise distances.
    static double dstar(const Triple& q, const Triple& p)
    {
        return std::max({distance(q[0], p[0]), distance(q[1], p[1]), distance(q[2], p[2])});
    }

    EllipsePoint g(const EllipsePoint& p) const { return advance(m_, p, r_); }

    void seed_interval(std::size_t first, std::size_t count);
    void fill_slow_arcs();
    double probe_uniform_delta(const Triple& u, const Triple& p1, std::size_t first) const;
    void verify(AdversarialSample& out) const;

    const SamplerSpec& spec_;
    EllipseModel m_;
    double r_;
    std::vector<EllipsePoint> z_;
    std::vector<EllipsePoint> points_;
    std::vector<Triple> seeded_;
    double uniform_delta_ = 0.0;
    std::size_t chain_points_ = 0;
};

/// Orbits and density for the fast arc (z[first], z[first+1]) and its two
/// images. Orbits are stacked against z[first+1]; the rest of the arc is
/// filled by a chain of triangles that never closes up into an orbit.
void Builder::seed_interval(std::size_t first, std::size_t count)
{
    const double eps = spec_.epsilon;
    const EllipsePoint& za = z_[first];
    const EllipsePoint& zb = z_[first + 1];
    const Triple ta = triple(za);
    const Triple tb = triple(zb);
    const double span = param_offset(za, zb);
    auto before_b = [&](double v) { return m_.at(zb.t() - v); };

    // p1 with d*(p1, zb) = eps/2, or the arc midpoint if the arc is short.
    double v1 = std::min(0.5 * span, eps);
    if (dstar(triple(before_b(v1)), tb) > 0.5 * eps) {
        v1 = threshold([&](double v) { return dstar(triple(before_b(v)), tb) >= 0.5 * eps; }, 0.0, v1, 1e-12);
    }
    std::vector<Triple> orbits{triple(before_b(v1))};

    // p_i past g_r of the previous triangle in all three slots.
    for (std::size_t i = 1; i < count; ++i) {
        const Triple prev = orbits.back();
        const Triple limits{g(prev[2]), g(prev[0]), g(prev[1])};
        const double room = param_offset(prev[0], zb);
        auto clear = [&](double v) {
            const Triple t = triple(m_.at(prev[0].t() + v));
            return strictly_between(limits[0], t[0], tb[0]) && strictly_between(limits[1], t[1], tb[1]) &&
                   strictly_between(limits[2], t[2], tb[2]);
        };
        if (!clear(room * (1.0 - 1e-9))) {
            throw VerificationError("sampler: no room for orbit " + std::to_string(i + 1) +
                                    " before the fast/slow boundary");
        }
        const double v = threshold(clear, 0.0, room, 1e-12);
        orbits.push_back(triple(m_.at(prev[0].t() + 0.5 * (v + room))));
    }

    // u with d*(za, u) = 0.75 eps.
    const Triple& p1 = orbits.front();
    const double reach = param_offset(za, p1[0]);
    double vu = reach;
    if (dstar(ta, triple(m_.at(za.t() + vu))) > 0.75 * eps) {
        vu = threshold([&](double v) { return dstar(ta, triple(m_.at(za.t() + v))) >= 0.75 * eps; }, 0.0, reach,
                       1e-12);
    }
    const Triple u = triple(m_.at(za.t() + vu));
    const double delta = probe_uniform_delta(u, p1, first);
    uniform_delta_ = uniform_delta_ == 0.0 ? delta : std::min(uniform_delta_, delta);

    // Chain q_1, q_2, ... walking from p1 back towards za. Each step is the
    // largest tried one for which g_r(q_n) passes q'_{n-1} in every slot and
    // d*(q_n, q_{n-1}) <= eps/2.
    Triple q = p1;
    double step = std::min(delta, 0.5 * eps);
    auto inside_u = [&](const Triple& t) {
        return strictly_between(ta[0], t[0], u[0]) && strictly_between(ta[1], t[1], u[1]) &&
               strictly_between(ta[2], t[2], u[2]);
    };
    std::size_t added = 0;
    while (!inside_u(q)) {
        if (++added > kMaxChain) {
            throw VerificationError("sampler: densifying chain did not reach u");
        }
        const double left = param_offset(za, q[0]);
        double v = std::min(step, 0.5 * left);
        Triple c;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 60) {
                throw VerificationError("sampler: chain step collapsed near t = " + std::to_string(q[0].t()));
            }
            c = triple(m_.at(q[0].t() - v));
            const bool ok = strictly_between(q[1], g(c[0]), tb[1]) && strictly_between(q[2], g(c[1]), tb[2]) &&
                            strictly_between(q[0], g(c[2]), tb[0]) && dstar(c, q) <= 0.5 * eps;
            if (ok) {
                break;
            }
            v *= 0.5;
        }
        for (const auto& p : c) {
            points_.push_back(p);
        }
        chain_points_ += 3;
        q = c;
        step = 1.5 * v;
    }

    for (const auto& t : orbits) {
        for (const auto& p : t) {
            points_.push_back(p);
        }
        seeded_.push_back(t);
    }
}

/// delta = min(delta', eps)/2 where delta' is half the smallest distance, over
/// a grid of p in [u, p1] and its images, at which g_r(q) still passes T(p).
double Builder::probe_uniform_delta(const Triple& u, const Triple& p1, std::size_t first) const
{
    double smallest = spec_.epsilon;
    for (std::size_t slot = 0; slot < 3; ++slot) {
        const EllipsePoint& lo = u[slot];
        const EllipsePoint& za = z_[first + 4 * slot];
        const double width = param_offset(lo, p1[slot]);
        for (std::size_t i = 0; i <= kProbeGrid; ++i) {
            const EllipsePoint p = m_.at(lo.t() + width * static_cast<double>(i) / kProbeGrid);
            const EllipsePoint next = advance(m_, p, triangle_side(m_, p, kTriangleTolerance));
            const double room = param_offset(za, p);
            const double v = threshold(
                [&](double w) { return !strictly_between(next, g(m_.at(p.t() - w)), g(p)); }, 0.0, room, 1e-13);
            smallest = std::min(smallest, distance(p, m_.at(p.t() - v)));
        }
    }
    return std::min(0.5 * smallest, spec_.epsilon) / 2.0;
}

void Builder::fill_slow_arcs()
{
    std::mt19937_64 rng(spec_.seed);
    // Parameter speed is at most a, so this bin width keeps chords <= eps/2.
    const double bin = 0.5 * spec_.epsilon / m_.a();
    for (std::size_t group = 0; group < 3; ++group) {
        for (const std::size_t j : {std::size_t{1}, std::size_t{3}}) {
            const EllipsePoint& from = z_[4 * group + j];
            const EllipsePoint& to = z_[(4 * group + j + 1) % 12];
            const double span = param_offset(from, to);
            const auto bins = static_cast<std::size_t>(std::ceil(span / bin));
            const double width = span / static_cast<double>(bins);
            for (std::size_t b = 0; b < bins; ++b) {
                // open bin, away from the z-points
                const double frac = 0.05 + 0.9 * uniform01(rng);
                points_.push_back(m_.at(from.t() + width * (static_cast<double>(b) + frac)));
            }
        }
    }
}

void Builder::verify(AdversarialSample& out) const
{
    // a * 2pi bounds the perimeter; the grid mesh is at most eps/10.
    const double perimeter = m_.a() * kTwoPi;
    const auto grid =
        std::max<std::size_t>(10000, static_cast<std::size_t>(std::ceil(10.0 * perimeter / spec_.epsilon)));
    const double mesh = perimeter / static_cast<double>(grid);
    out.epsilon_achieved = epsilon_density(m_, out.points, grid);
    if (out.epsilon_achieved + 0.5 * mesh > spec_.epsilon) {
        throw VerificationError("sampler: density check failed, measured " + std::to_string(out.epsilon_achieved) +
                                " > " + std::to_string(spec_.epsilon));
    }
    const auto expected = HomotopyType::wedge(spec_.k - 1, 1);
    for (const Convention c : {Convention::Less, Convention::LessEq}) {
        const SampleClassification cls = classify_sample(m_, out.points, r_, c);
        if (cls.orbits.count != spec_.k || cls.orbits.length != 3 || !(cls.type == expected)) {
            std::ostringstream msg;
            msg << "sampler: with " << to_string(c) << " found " << cls.orbits.count << " orbits of length "
                << cls.orbits.length << " (" << cls.type.str() << "), expected " << spec_.k;
            // Locate the orbits by the arc of their first vertex.
            std::size_t per_arc[4] = {0, 0, 0, 0};
            for (const auto& orbit : cls.orbits.orbits) {
                const EllipsePoint& p = out.points[orbit.front()];
                for (std::size_t j = 0; j < 12; ++j) {
                    if (strictly_between(z_[j], p, z_[(j + 1) % 12]) || p == z_[j]) {
                        ++per_arc[j % 4];
                        break;
                    }
                }
            }
            msg << "; orbit vertices by arc I0..I3 = " << per_arc[0] << "," << per_arc[1] << "," << per_arc[2] << ","
                << per_arc[3] << " (seeded " << spec_.n_first << " in I0, " << spec_.n_second << " in I2)";
            throw VerificationError(msg.str());
        }
        out.orbit_count = cls.orbits.count;
        out.type = cls.type;
    }
}

AdversarialSample Builder::run()
{
    seed_interval(0, spec_.n_first);
    seed_interval(2, spec_.n_second);
    fill_slow_arcs();

    AdversarialSample out;
    out.points = sort_cyclically(points_);
    out.uniform_delta = uniform_delta_;
    out.chain_points = chain_points_;
    auto index_of = [&](const EllipsePoint& p) {
        const auto it = std::lower_bound(out.points.begin(), out.points.end(), p,
                                         [](const EllipsePoint& l, const EllipsePoint& r) { return l.t() < r.t(); });
        return static_cast<std::size_t>(it - out.points.begin());
    };
    for (const auto& t : seeded_) {
        out.seeded_orbits.push_back({index_of(t[0]), index_of(t[1]), index_of(t[2])});
    }
    verify(out);
    return out;
}

}  // namespace

AdversarialSample adversarial_sample(const SamplerSpec& spec)
{
    const EllipseModel m(spec.a);
    const CriticalRadii radii = critical_radii(m);
    if (!(spec.r > radii.r1 && spec.r < radii.r2)) {
        throw ParameterError("adversarial_sample: need r1 < r < r2");
    }
    if (!(spec.epsilon > 0.0) || spec.k < 2 || spec.n_first < 1 || spec.n_second < 1 ||
        spec.n_first + spec.n_second != spec.k) {
        throw ParameterError("adversarial_sample: need epsilon > 0, k >= 2 and a split n + n' = k with n, n' >= 1");
    }
    Builder builder(spec);
    return builder.run();
}

UniformSample uniform_sample(const EllipseModel& m, std::size_t n, std::uint64_t seed, double jitter)
{
    if (n < 3) {
        throw ParameterError("uniform_sample: need at least 3 points");
    }
    if (!(jitter >= 0.0 && jitter < 0.5)) {
        throw ParameterError("uniform_sample: jitter must lie in [0, 0.5)");
    }
    std::mt19937_64 rng(seed);
    UniformSample out;
    out.points.reserve(n);
    const double spacing = kTwoPi / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double shift = jitter == 0.0 ? 0.0 : jitter * (2.0 * uniform01(rng) - 1.0);
        out.points.push_back(m.at(spacing * (static_cast<double>(i) + shift)));
    }
    out.epsilon_achieved = epsilon_density(m, out.points);
    return out;
}

double epsilon_density(const EllipseModel& m, std::span<const EllipsePoint> points, std::size_t grid)
{
    if (points.empty()) {
        throw ParameterError("epsilon_density: empty point set");
    }
    if (grid == 0) {
        throw ParameterError("epsilon_density: empty grid");
    }
    std::vector<EllipsePoint> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const EllipsePoint& l, const EllipsePoint& r) { return l.t() < r.t(); });
    // Distance from y increases along the arc towards h^{-1}(y) and decreases
    // after it, so the nearest sample is one of the two neighbors in order.
    double worst = 0.0;
    for (std::size_t i = 0; i < grid; ++i) {
        const EllipsePoint y = m.at(kTwoPi * static_cast<double>(i) / static_cast<double>(grid));
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), y.t(),
                                         [](const EllipsePoint& p, double t) { return p.t() < t; });
        const EllipsePoint& after = it == sorted.end() ? sorted.front() : *it;
        const EllipsePoint& before = it == sorted.begin() ? sorted.back() : *(it - 1);
        worst = std::max(worst, std::min(distance(y, after), distance(y, before)));
    }
    return worst;
}

MergeInstance orbit_merge_instance(const EllipseModel& m)
{
    if (m.is_circle()) {
        throw ParameterError("orbit_merge_instance: the circle has no fast arcs");
    }
    const CriticalRadii radii = critical_radii(m);
    MergeInstance out;
    out.r = 0.5 * (radii.r1 + radii.r2);
    const double r = out.r;
    const std::vector<EllipsePoint> z = z_points(m, r);
    auto triple = [&](double t) { return inscribed_triangle(m, m.at(t), kTriangleTolerance).vertices; };

    // Per fast arc: the first triangle late in the arc where s is close to r,
    // so the feed distances stay below r2; the second just past where
    // g_r of the first would reach it in every slot.
    double feed = 0.0;
    for (const std::size_t first : {std::size_t{0}, std::size_t{2}}) {
        const double start = z[first].t() + 0.9 * param_offset(z[first], z[first + 1]);
        const Triple p = triple(start);
        const Triple limits{advance(m, p[2], r), advance(m, p[0], r), advance(m, p[1], r)};
        auto clear = [&](double v) {
            const Triple t = triple(start + v);
            return strictly_between(limits[0], t[0], p[1]) && strictly_between(limits[1], t[1], p[2]) &&
                   strictly_between(limits[2], t[2], p[0]);
        };
        const double room = 0.5 * param_offset(p[0], z[first + 1]);
        if (!clear(room)) {
            throw VerificationError("orbit_merge_instance: fast arc too short for two triangles");
        }
        const double v = threshold(clear, 0.0, room, 1e-12);
        const Triple q = triple(start + v + std::min(2e-4, 0.1 * (room - v)));
        for (std::size_t k = 0; k < 3; ++k) {
            feed = std::max(feed, distance(p[k], q[(k + 1) % 3]));
            out.points.push_back(p[k]);
            out.points.push_back(q[k]);
        }
    }
    // Just enough to let each first triangle feed into the second.
    out.r_tilde = feed + 0.1 * (feed - r);
    if (!(out.r_tilde < radii.r2)) {
        throw VerificationError("orbit_merge_instance: merge scale " + std::to_string(out.r_tilde) + " leaves (r1, r2)");
    }
    out.points = sort_cyclically(out.points);

    for (const Convention c : {Convention::Less, Convention::LessEq}) {
        const std::size_t before = classify_sample(m, out.points, r, c).orbits.count;
        const std::size_t after = classify_sample(m, out.points, out.r_tilde, c).orbits.count;
        if (before != 4 || after != 2) {
            throw VerificationError("orbit_merge_instance: expected 4 orbits merging into 2, found " +
                                    std::to_string(before) + " and " + std::to_string(after));
        }
    }
    return out;
}

}  // namespace vrellipse
