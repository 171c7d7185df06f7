#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vrellipse/cyclic_graph.hpp"
#include "vrellipse/dynamics.hpp"
#include "vrellipse/ellipse.hpp"
#include "vrellipse/oracle.hpp"
#include "vrellipse/vietoris_rips.hpp"

namespace vrellipse {

using nlohmann::json;

/// {"positions": [...], "out_degree": [...]}
json to_json(const CyclicGraph& g);
/// Throws ParameterError unless the result validates.
CyclicGraph graph_from_json(const json& j);

/// {"a": a, "params": [t...]}
json points_to_json(const EllipseModel& m, std::span<const EllipsePoint> points);

struct PointSet {
    double a = 1.0;
    std::vector<EllipsePoint> points;
};

/// Reads "params" (parameters) or "points" ([[x, y], ...], projected onto Y).
PointSet points_from_json(const json& j);

/// {"type": "point"} | {"type": "sphere", "dim": d} | {"type": "wedge", "count": c, "sphere_dim": d}
json to_json(const HomotopyType& h);
HomotopyType homotopy_from_json(const json& j);

json to_json(const OrbitReport& report);

/// Intervals carry dim, birth, death, birth_closed, death_closed; an
/// essential class has death null.
json to_json(const Barcode& b);
Barcode barcode_from_json(const json& j);

/// One row per interval: dim,birth,death,birth_closed,death_closed. Diagonal
/// records follow as rows of kind "diagonal".
std::string barcode_csv(const Barcode& b);

/// One row per point: t,x,y.
std::string points_csv(std::span<const EllipsePoint> points);

}  // namespace vrellipse
