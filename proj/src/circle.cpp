#include "vrellipse/circle.hpp"

#include <cmath>

#include "vrellipse/errors.hpp"

namespace vrellipse {

double normalize_unit(double x)
{
    double r = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.
    if (r >= 1.0) {
        r = 0.0;
    }
    return r;
}

CyclePosition::CyclePosition(double coord) : coord_(normalize_unit(coord)) {}

double cw_dist(CyclePosition p, CyclePosition q)
{
    double d = q.coord() - p.coord();
    if (d < 0.0) {
        d += 1.0;
        if (d >= 1.0) {
            d = std::nextafter(1.0, 0.0);
        }
    }
    return d;
}

bool in_cyclic_order(CyclePosition p, CyclePosition w, CyclePosition u, bool strict)
{
    if (strict) {
        if (p == w || w == u || u == p) {
            return false;
        }
        return cw_dist(p, w) < cw_dist(p, u);
    }
    // With u = p the walk p -> w -> p is one full turn for any w.
    return u == p || cw_dist(p, w) <= cw_dist(p, u);
}

Arc::Arc(CyclePosition start, CyclePosition end, bool start_closed, bool end_closed)
    : start_(start), end_(end), start_closed_(start_closed), end_closed_(end_closed)
{
    if (start == end && !(start_closed && end_closed)) {
        throw ParameterError("Arc: start == end denotes a full circle or empty set; only the closed single point is allowed");
    }
}

Arc Arc::complement() const
{
    return Arc(end_, start_, !end_closed_, !start_closed_);
}

bool arc_contains(const Arc& arc, CyclePosition z)
{
    if (z == arc.start()) {
        return arc.start_closed();
    }
    if (z == arc.end()) {
        return arc.end_closed();
    }
    return cw_dist(arc.start(), z) < cw_dist(arc.start(), arc.end());
}

}  // namespace vrellipse
