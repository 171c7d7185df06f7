#pragma once

// The circle of unit circumference. A point is identified with its clockwise
// distance from 0, so coordinates live in [0, 1). "Clockwise" is the direction
// of increasing coordinate.

namespace vrellipse {

class CyclePosition {
public:
    constexpr CyclePosition() = default;
    /// Any real; reduced mod 1 into [0, 1).
    explicit CyclePosition(double coord);

    [[nodiscard]] constexpr double coord() const { return coord_; }

    friend constexpr bool operator==(CyclePosition, CyclePosition) = default;

private:
    double coord_ = 0.0;
};

/// Reduce x mod 1 into [0, 1).
double normalize_unit(double x);

/// Clockwise distance from p to q, in [0, 1).
double cw_dist(CyclePosition p, CyclePosition q);

/// p <= w <= u <= p in clockwise order (strict: p < w < u < p, all distinct).
/// The weak form holds whenever two of the points coincide.
bool in_cyclic_order(CyclePosition p, CyclePosition w, CyclePosition u, bool strict);

/// Clockwise arc from start to end with per-endpoint closedness.
class Arc {
public:
    /// start == end is only allowed with both ends closed (a single point).
    Arc(CyclePosition start, CyclePosition end, bool start_closed, bool end_closed);

    [[nodiscard]] CyclePosition start() const { return start_; }
    [[nodiscard]] CyclePosition end() const { return end_; }
    [[nodiscard]] bool start_closed() const { return start_closed_; }
    [[nodiscard]] bool end_closed() const { return end_closed_; }

    /// The arc from end back to start, endpoint flags flipped. Undefined for
    /// the single-point arc.
    [[nodiscard]] Arc complement() const;

private:
    CyclePosition start_;
    CyclePosition end_;
    bool start_closed_;
    bool end_closed_;
};

bool arc_contains(const Arc& arc, CyclePosition z);

}  // namespace vrellipse
