#include <doctest.h>

#include "support.hpp"
#include "vrellipse/errors.hpp"
#include "vrellipse/serialization.hpp"

using namespace vrellipse;
using namespace vrellipse::testing;

TEST_CASE("graphs round-trip")
{
    for (const CyclicGraph& g : {regular(9, 3), fig_left(), fig_middle()}) {
        CHECK(graph_from_json(json::parse(to_json(g).dump())) == g);
    }
    CHECK_THROWS_AS(graph_from_json(json{{"positions", {0.0, 0.5}}}), ParameterError);
    CHECK_THROWS_AS(graph_from_json(json{{"positions", {0.0, 0.5}}, {"out_degree", {1}}}), ParameterError);
    CHECK_THROWS_AS(graph_from_json(json{{"positions", {0.0, 0.5}}, {"out_degree", {1, 1}}}), ParameterError);
    CHECK_THROWS_AS(graph_from_json(json::array()), ParameterError);
}

TEST_CASE("homotopy types round-trip")
{
    CHECK(to_json(HomotopyType::wedge(2, 1)) == json{{"type", "wedge"}, {"count", 2}, {"sphere_dim", 2}});
    CHECK(to_json(HomotopyType::odd_sphere(0)) == json{{"type", "sphere"}, {"dim", 1}});
    CHECK(to_json(HomotopyType::point()) == json{{"type", "point"}});
    for (const HomotopyType& h : {HomotopyType::point(), HomotopyType::odd_sphere(2), HomotopyType::wedge(1, 1),
                                  HomotopyType::wedge(4, 0)}) {
        CHECK(homotopy_from_json(to_json(h)) == h);
    }
    CHECK_THROWS_AS(homotopy_from_json(json{{"type", "sphere"}, {"dim", 2}}), ParameterError);
}

TEST_CASE("barcodes round-trip")
{
    const Barcode b = ellipse_barcode(EllipseModel(1.2), Convention::LessEq);
    CHECK(barcode_from_json(json::parse(to_json(b).dump())) == b);
    Barcode essential;
    essential.intervals.push_back({0, 0.0, std::numeric_limits<double>::infinity(), true, false});
    CHECK(to_json(essential)["intervals"][0]["death"].is_null());
    CHECK(barcode_from_json(to_json(essential)) == essential);

    const std::string csv = barcode_csv(b);
    CHECK(csv.rfind("kind,dim,birth,death,birth_closed,death_closed,multiplicity\n", 0) == 0);
    CHECK(csv.find("diagonal,2,") != std::string::npos);
}

TEST_CASE("point sets")
{
    const EllipseModel m(1.2);
    const std::vector<EllipsePoint> pts{m.at(0.1), m.at(2.0), m.at(4.5)};
    const PointSet back = points_from_json(json::parse(points_to_json(m, pts).dump()));
    CHECK(back.a == 1.2);
    CHECK(back.points == pts);

    const PointSet xy = points_from_json(json{{"a", 1.2}, {"points", {{1.2, 0.0}, {0.0, -1.0}}}});
    CHECK(xy.points[0].t() == 0.0);
    CHECK(xy.points[1].t() == doctest::Approx(1.5 * kPi));
    CHECK_THROWS_AS(points_from_json(json{{"a", 1.2}}), ParameterError);
    CHECK_THROWS_AS(points_from_json(json{{"a", 3.0}, {"params", {0.0}}}), ParameterError);
    CHECK(points_csv(pts).rfind("t,x,y\n", 0) == 0);
}
