#include "vrellipse/serialization.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "vrellipse/errors.hpp"

namespace vrellipse {

namespace {

template <class T>
T field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ParameterError(std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParameterError(std::string("bad field '") + key + "': " + e.what());
    }
}

std::string number(double x)
{
    std::ostringstream out;
    out << std::setprecision(17) << x;
    return out.str();
}

}  // namespace

json to_json(const CyclicGraph& g)
{
    json positions = json::array();
    for (const auto& p : g.positions()) {
        positions.push_back(p.coord());
    }
    return {{"positions", positions}, {"out_degree", g.out_degree()}};
}

CyclicGraph graph_from_json(const json& j)
{
    const auto coords = field<std::vector<double>>(j, "positions");
    const auto degree = field<std::vector<std::size_t>>(j, "out_degree");
    std::vector<CyclePosition> positions;
    positions.reserve(coords.size());
    for (const double c : coords) {
        positions.emplace_back(c);
    }
    CyclicGraph g(std::move(positions), degree);
    if (!validate(g)) {
        throw ParameterError("graph is not a valid cyclic graph");
    }
    return g;
}

json points_to_json(const EllipseModel& m, std::span<const EllipsePoint> points)
{
    json params = json::array();
    for (const auto& p : points) {
        params.push_back(p.t());
    }
    return {{"a", m.a()}, {"params", params}};
}

PointSet points_from_json(const json& j)
{
    PointSet set;
    set.a = field<double>(j, "a");
    const EllipseModel m(set.a);
    if (j.contains("params")) {
        for (const double t : field<std::vector<double>>(j, "params")) {
            set.points.push_back(m.at(t));
        }
    } else if (j.contains("points")) {
        for (const auto& xy : field<std::vector<std::vector<double>>>(j, "points")) {
            if (xy.size() != 2) {
                throw ParameterError("points must be [x, y] pairs");
            }
            set.points.push_back(m.project(xy[0], xy[1]));
        }
    } else {
        throw ParameterError("point set needs 'params' or 'points'");
    }
    return set;
}

json to_json(const HomotopyType& h)
{
    switch (h.kind()) {
    case HomotopyType::Kind::Point:
        return {{"type", "point"}};
    case HomotopyType::Kind::OddSphere:
        return {{"type", "sphere"}, {"dim", h.sphere_dimension()}};
    case HomotopyType::Kind::WedgeOfEvenSpheres:
        break;
    }
    return {{"type", "wedge"}, {"count", h.count()}, {"sphere_dim", h.sphere_dimension()}};
}

HomotopyType homotopy_from_json(const json& j)
{
    const auto type = field<std::string>(j, "type");
    if (type == "point") {
        return HomotopyType::point();
    }
    if (type == "sphere") {
        const auto dim = field<std::size_t>(j, "dim");
        if (dim % 2 == 0) {
            throw ParameterError("sphere dimension must be odd");
        }
        return HomotopyType::odd_sphere(dim / 2);
    }
    if (type == "wedge") {
        const auto dim = field<std::size_t>(j, "sphere_dim");
        if (dim % 2 != 0) {
            throw ParameterError("wedge sphere dimension must be even");
        }
        return HomotopyType::wedge(field<std::size_t>(j, "count"), dim / 2);
    }
    throw ParameterError("unknown homotopy type '" + type + "'");
}

json to_json(const OrbitReport& report)
{
    return {{"orbits", report.orbits}, {"length", report.length}, {"winding", report.winding}, {"count", report.count}};
}

json to_json(const Barcode& b)
{
    json intervals = json::array();
    for (const auto& bar : b.intervals) {
        intervals.push_back({{"dim", bar.dim},
                             {"birth", bar.birth},
                             {"death", std::isinf(bar.death) ? json(nullptr) : json(bar.death)},
                             {"birth_closed", bar.birth_closed},
                             {"death_closed", bar.death_closed}});
    }
    json diagonal = json::array();
    for (const auto& d : b.diagonal) {
        diagonal.push_back({{"dim", d.dim}, {"lo", d.lo}, {"hi", d.hi}, {"multiplicity", d.multiplicity}});
    }
    return {{"intervals", intervals}, {"diagonal", diagonal}};
}

Barcode barcode_from_json(const json& j)
{
    Barcode b;
    for (const auto& bar : field<json>(j, "intervals")) {
        BarInterval in;
        in.dim = field<std::size_t>(bar, "dim");
        in.birth = field<double>(bar, "birth");
        in.death = bar.contains("death") && bar.at("death").is_null() ? std::numeric_limits<double>::infinity()
                                                                       : field<double>(bar, "death");
        in.birth_closed = field<bool>(bar, "birth_closed");
        in.death_closed = field<bool>(bar, "death_closed");
        b.intervals.push_back(in);
    }
    for (const auto& d : field<json>(j, "diagonal")) {
        b.diagonal.push_back({field<std::size_t>(d, "dim"), field<double>(d, "lo"), field<double>(d, "hi"),
                              field<std::size_t>(d, "multiplicity")});
    }
    return b;
}

std::string barcode_csv(const Barcode& b)
{
    std::ostringstream out;
    out << "kind,dim,birth,death,birth_closed,death_closed,multiplicity\n";
    for (const auto& bar : b.intervals) {
        out << "interval," << bar.dim << ',' << number(bar.birth) << ',' << (std::isinf(bar.death) ? "inf" : number(bar.death))
            << ',' << bar.birth_closed << ',' << bar.death_closed << ",1\n";
    }
    for (const auto& d : b.diagonal) {
        out << "diagonal," << d.dim << ',' << number(d.lo) << ',' << number(d.hi) << ",0,0," << d.multiplicity << '\n';
    }
    return out.str();
}

std::string points_csv(std::span<const EllipsePoint> points)
{
    std::ostringstream out;
    out << "t,x,y\n";
    for (const auto& p : points) {
        out << number(p.t()) << ',' << number(p.x()) << ',' << number(p.y()) << '\n';
    }
    return out.str();
}

}  // namespace vrellipse
