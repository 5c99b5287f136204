#include <gtest/gtest.h>

#include <random>

#include "gsb/checker.hpp"
#include "gsb/dataset.hpp"
#include "gsb/geometry/functions.hpp"
#include "gsb/geometry/geometry.hpp"
#include "support.hpp"

namespace gsb {
namespace {

using namespace geometry;

Geometry wkt(std::string_view text) { return parse_wkt(text).parsed; }

TEST(Wkt, ParsesCrsPrefixAndCoordinates) {
  const auto lit = parse_wkt("<http://www.opengis.net/def/crs/OGC/1.3/CRS84> Point(-88.38  31.95)");
  EXPECT_EQ(lit.parsed.kind(), GeometryKind::Point);
  EXPECT_EQ(lit.parsed.crs().uri, kCrs84Uri);
  EXPECT_EQ(lit.parsed.point_coord(), (Coord{-88.38, 31.95}));
}

TEST(Wkt, Epsg4326IsLatitudeFirst) {
  const auto g = wkt("<http://www.opengis.net/def/crs/EPSG/0/4326> Point(31.95 -88.38)");
  EXPECT_EQ(g.point_coord(), (Coord{-88.38, 31.95}));
  EXPECT_EQ(serialize(g, Serialization::WKT, true), "<http://www.opengis.net/def/crs/EPSG/0/4326> Point(31.95 -88.38)");
}

TEST(Wkt, EmptyForms) {
  EXPECT_TRUE(wkt("").is_empty());
  EXPECT_EQ(wkt("").kind(), GeometryKind::Unspecified);
  EXPECT_EQ(wkt("  ").kind(), GeometryKind::Unspecified);
  EXPECT_EQ(wkt("LineString EMPTY").kind(), GeometryKind::LineString);
  EXPECT_EQ(wkt("point empty").kind(), GeometryKind::Point);
  EXPECT_EQ(serialize(wkt(""), Serialization::WKT, false), "");
}

TEST(Wkt, RejectsMalformedText) {
  for (const auto* bad : {"Point(1)", "Point(1 2", "Polygon((0 0, 1 0, 1 1))", "Circle(1 2)", "<http://x Point(1 2)",
                          "Point(1 2) trailing", "LineString(1 1)"}) {
    EXPECT_THROW(parse_wkt(bad), ParseError) << bad;
  }
}

TEST(Gml, ParsesPolygonWithNamespaceAndSrsName) {
  const auto lit = parse_gml(
      R"(<gml:Polygon xmlns:gml="http://www.opengis.net/gml/3.2" srsName="http://www.opengis.net/def/crs/OGC/1.3/CRS84">)"
      R"(<gml:exterior><gml:LinearRing><gml:posList>0 0 2 0 2 3 0 3 0 0</gml:posList></gml:LinearRing></gml:exterior>)"
      R"(</gml:Polygon>)");
  ASSERT_EQ(lit.parsed.kind(), GeometryKind::Polygon);
  EXPECT_EQ(lit.parsed.parts().front().size(), 5u);
  EXPECT_TRUE(geometry_equals(lit.parsed, wkt("Polygon((0 0, 2 0, 2 3, 0 3, 0 0))"), 0));
}

TEST(Gml, EmptyPoint) {
  const auto g = parse_gml(R"(<gml:Point xmlns:gml="http://www.opengis.net/gml/3.2"/>)").parsed;
  EXPECT_TRUE(g.is_empty());
  EXPECT_EQ(g.kind(), GeometryKind::Point);
}

TEST(Gml, RejectsMalformedMarkup) {
  EXPECT_THROW(parse_gml("<gml:Point><gml:pos>1</gml:pos></gml:Point>"), GeometryError);
  EXPECT_THROW(parse_gml("<gml:Point><gml:pos>1 2</gml:pos>"), GeometryError);
  EXPECT_THROW(parse_gml("<gml:Curve/>"), GeometryError);
}

TEST(RoundTrip, DatasetGeometriesInBothSerializations) {
  for (const auto& rec : dataset::benchmark_dataset().geometries) {
    const auto g = parse_wkt(rec.wkt).parsed;
    for (const auto s : {Serialization::WKT, Serialization::GML}) {
      const auto back = parse_literal(serialize(g, s, true), s).parsed;
      EXPECT_EQ(back, g) << rec.iri;
    }
    EXPECT_EQ(parse_gml(rec.gml).parsed, g) << rec.iri;
  }
}

TEST(RoundTrip, RandomGeometries) {
  std::mt19937 rng(20240611);
  for (int i = 0; i < 200; ++i) {
    const auto g = testing_support::random_geometry(rng);
    for (const auto s : {Serialization::WKT, Serialization::GML}) {
      const auto text = serialize(g, s, true);
      EXPECT_EQ(parse_literal(text, s).parsed, g) << text;
    }
  }
}

TEST(Normalization, IdempotentOverDatasetAndRandomCorpus) {
  std::vector<Geometry> corpus;
  for (const auto& rec : dataset::benchmark_dataset().geometries) corpus.push_back(parse_wkt(rec.wkt).parsed);
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) corpus.push_back(testing_support::random_geometry(rng));
  for (const auto& g : corpus) {
    const auto w = checker::normalize_wkt(serialize(g, Serialization::WKT, true));
    EXPECT_EQ(checker::normalize_wkt(w), w);
    const auto m = checker::normalize_gml(serialize(g, Serialization::GML, true));
    EXPECT_EQ(checker::normalize_gml(m), m);
    const auto c = canonical_form(g);
    EXPECT_EQ(canonical_form(c), c);
  }
}

TEST(AxisOrder, Epsg4326AndCrs84RenderingsAreEqual) {
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto p = Geometry::point({testing_support::random_coordinate(rng), testing_support::random_coordinate(rng)});
    const auto epsg = p.with_crs(CrsRef::from_uri(std::string(kEpsg4326Uri)));
    const auto a = parse_wkt(serialize(p, Serialization::WKT, true)).parsed;
    const auto b = parse_wkt(serialize(epsg, Serialization::WKT, true)).parsed;
    EXPECT_TRUE(geometry_equals(a, b, 0));
  }
}

TEST(Equality, DatasetLiteralPairs) {
  const auto& ds = dataset::benchmark_dataset();
  EXPECT_TRUE(geometry_equals(ds.exact("J").shape, ds.exact("K").shape, 0));
  EXPECT_TRUE(geometry_equals(ds.exact("L").shape, ds.exact("M").shape, 0));
  EXPECT_TRUE(geometry_equals(wkt(""), wkt("LineString EMPTY"), 0));
  EXPECT_TRUE(geometry_equals(wkt("LineString EMPTY"), wkt("Point EMPTY"), 0));
  EXPECT_TRUE(geometry_equals(wkt("Point(1 1)"), wkt("Point(1 1.000000000001)"), 1e-9));
  EXPECT_FALSE(geometry_equals(wkt("Point(1 1)"), wkt("Point(1 1.1)"), 1e-9));
  EXPECT_FALSE(geometry_equals(wkt("Point EMPTY"), wkt("Point(0 0)"), 1));
  // Same point set, different vertex order and start.
  EXPECT_TRUE(geometry_equals(wkt("Polygon((0 0, 0 1, 1 1, 1 0, 0 0))"), wkt("Polygon((1 1, 1 0, 0 0, 0 1, 1 1))"), 0));
}

TEST(Functions, DistanceAndUnits) {
  const FunctionValue args[] = {wkt("Point(0 0)"), wkt("Point(3 4)"), std::string(kUomDegree)};
  EXPECT_DOUBLE_EQ(std::get<double>(nontopological_function("distance", args)), 5.0);
  EXPECT_DOUBLE_EQ(distance(wkt("Point(0 0)"), wkt("Point(1 0)"), DistanceUnit::Metre), kMetresPerDegree);
  EXPECT_DOUBLE_EQ(distance(wkt("Point(0 2)"), wkt("Polygon((0 0, 1 0, 1 1, 0 1, 0 0))"), DistanceUnit::Degree), 1.0);
  EXPECT_THROW(unit_from_iri("http://example.org/furlong"), GeometryError);
}

TEST(Functions, EnvelopeContainsEverySampleOfItsInput) {
  const auto line = wkt("LineString(0 0, 2 3)");
  const auto env = envelope(line);
  EXPECT_TRUE(geometry_equals(env, wkt("Polygon((0 0, 2 0, 2 3, 0 3, 0 0))"), 0));
  for (int i = 0; i <= 10; ++i) {
    const Coord c{0.2 * i, 0.3 * i};
    EXPECT_NE(testing_support::locate(env, c), Location::Exterior);
  }
  EXPECT_EQ(testing_support::locate(env, {2.5, 1}), Location::Exterior);
}

TEST(Functions, BoundaryByKind) {
  EXPECT_TRUE(geometry_equals(boundary(wkt("Polygon((0 0, 1 0, 1 1, 0 1, 0 0))")),
                              wkt("LineString(0 0, 1 0, 1 1, 0 1, 0 0)"), 0));
  EXPECT_TRUE(geometry_equals(boundary(wkt("LineString(0 0, 1 2)")), wkt("MultiPoint((0 0), (1 2))"), 0));
  EXPECT_TRUE(boundary(wkt("Point(4 4)")).is_empty());
}

TEST(Functions, SetOperationsOnAxisAlignedShapes) {
  const auto a = wkt("Polygon((0 0, 2 0, 2 2, 0 2, 0 0))");
  const auto b = wkt("Polygon((1 1, 3 1, 3 3, 1 3, 1 1))");
  EXPECT_TRUE(geometry_equals(intersection(a, b), wkt("Polygon((1 1, 2 1, 2 2, 1 2, 1 1))"), 1e-9));
  EXPECT_TRUE(geometry_equals(geometry_union(a, b),
                              wkt("Polygon((0 0, 2 0, 2 1, 3 1, 3 3, 1 3, 1 2, 0 2, 0 0))"), 1e-9));
  EXPECT_TRUE(geometry_equals(difference(a, b), wkt("Polygon((0 0, 2 0, 2 1, 1 1, 1 2, 0 2, 0 0))"), 1e-9));
  EXPECT_TRUE(geometry_equals(convex_hull(wkt("MultiPoint((0 0), (2 0), (1 1), (0 2))")),
                              wkt("Polygon((0 0, 2 0, 0 2, 0 0))"), 1e-9));
}

TEST(Functions, BufferOfPointApproximatesCircle) {
  const auto circle = buffer(wkt("Point(0 0)"), 1, DistanceUnit::Degree);
  ASSERT_EQ(circle.kind(), GeometryKind::Polygon);
  EXPECT_EQ(circle.parts().front().size(), 4u * kBufferSegmentsPerQuadrant + 1);
  for (const auto& c : circle.parts().front()) EXPECT_NEAR(std::hypot(c.x, c.y), 1.0, 1e-12);
}

TEST(Functions, GetSrid) {
  EXPECT_EQ(get_srid(wkt("Point(-88.38 31.95)")), kCrs84Uri);
  EXPECT_EQ(get_srid(dataset::benchmark_dataset().exact("M").shape), kEpsg4326Uri);
}

TEST(Properties, DatasetExamples) {
  const auto& ds = dataset::benchmark_dataset();
  EXPECT_EQ(std::get<bool>(geometry_property("isEmpty", ds.exact("H").shape)), true);
  EXPECT_EQ(std::get<int>(geometry_property("dimension", ds.exact("A").shape)), 2);
  EXPECT_EQ(std::get<int>(geometry_property("dimension", ds.exact("E").shape)), 1);
  EXPECT_EQ(std::get<int>(geometry_property("dimension", ds.exact("F").shape)), 0);
  EXPECT_EQ(std::get<bool>(geometry_property("isSimple", ds.exact("E").shape)), true);
  EXPECT_EQ(std::get<bool>(geometry_property("isSimple", wkt("LineString(0 0, 2 2, 2 0, 0 2)"))), false);
  for (const auto& rec : ds.geometries) {
    if (rec.shape.is_empty()) continue;
    EXPECT_EQ(std::get<int>(geometry_property("coordinateDimension", rec.shape)), 2);
    EXPECT_EQ(std::get<int>(geometry_property("spatialDimension", rec.shape)), 2);
  }
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(5), "5");
  EXPECT_EQ(format_number(-0.5), "-0.5");
  EXPECT_EQ(format_number(0.1), "0.1");
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = d(rng);
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

}  // namespace
}  // namespace gsb
