#include <gtest/gtest.h>

#include <random>

#include "gsb/dataset.hpp"
#include "gsb/geometry/topology.hpp"
#include "support.hpp"

namespace gsb {
namespace {

using namespace geometry;

Geometry wkt(std::string_view text) { return parse_wkt(text).parsed; }

std::vector<dataset::GeometryRecord> non_empty() {
  std::vector<dataset::GeometryRecord> out;
  for (const auto& rec : dataset::benchmark_dataset().geometries)
    if (!rec.shape.is_empty()) out.push_back(rec);
  return out;
}

TEST(De9im, ParseAndTranspose) {
  const auto m = De9imMatrix::parse("212F01FF2");
  EXPECT_EQ(m.str(), "212F01FF2");
  EXPECT_EQ(m.transposed().str(), "2FF10F212");
  EXPECT_THROW(De9imMatrix::parse("21"), std::invalid_argument);
  EXPECT_TRUE(matches_pattern(m, "T*T******"));
  EXPECT_FALSE(matches_pattern(m, "T*T***T**"));
  EXPECT_FALSE(matches_pattern(m, "F********"));
  EXPECT_THROW(matches_pattern(m, "X********"), std::invalid_argument);
}

TEST(De9im, KnownMatrices) {
  const auto sq = wkt("Polygon((0 0, 1 0, 1 1, 0 1, 0 0))");
  EXPECT_EQ(relate_matrix(sq, wkt("Polygon((1 0, 2 0, 2 1, 1 1, 1 0))")).str(), "FF2F11212");
  EXPECT_EQ(relate_matrix(sq, sq).str(), "2FFF1FFF2");
  EXPECT_EQ(relate_matrix(wkt("Point(0.5 0.5)"), sq).str(), "0FFFFF212");
  EXPECT_EQ(relate_matrix(wkt("LineString(-1 0.5, 2 0.5)"), sq).str(), "101FF0212");
}

TEST(Predicates, NamedExamples) {
  const auto a = wkt("Polygon((0 0, 1 0, 1 1, 0 1, 0 0))");
  const auto b = wkt("Polygon((1 0, 2 0, 2 1, 1 1, 1 0))");
  EXPECT_TRUE(topological_predicate("rcc8ec", a, b));
  EXPECT_TRUE(topological_predicate("sfTouches", a, b));
  EXPECT_TRUE(topological_predicate("ehMeet", a, b));
  EXPECT_FALSE(topological_predicate("sfOverlaps", a, b));
  EXPECT_THROW(topological_predicate("sfNear", a, b), std::invalid_argument);
  EXPECT_EQ(all_predicates().size(), 24u);
  for (const auto p : all_predicates()) EXPECT_EQ(predicate_from_name(predicate_name(p)), p);
}

TEST(Predicates, DatasetLiteralPairs) {
  const auto& ds = dataset::benchmark_dataset();
  EXPECT_TRUE(topological_predicate(Predicate::sfEquals, ds.exact("J").shape, ds.exact("K").shape));
  EXPECT_TRUE(topological_predicate(Predicate::sfEquals, ds.exact("L").shape, ds.exact("M").shape));
}

// Every relation the catalog exercises has a witness pair in the dataset.
TEST(Predicates, WitnessesHold) {
  const auto& ds = dataset::benchmark_dataset();
  for (const auto p : all_predicates()) {
    const auto [a, b] = dataset::relation_witness(p);
    EXPECT_TRUE(topological_predicate(p, ds.exact(a).shape, ds.exact(b).shape)) << predicate_name(p);
  }
}

TEST(Oracle, RelateMatrixAgreesWithSamplingOnDatasetPairs) {
  const auto geoms = non_empty();
  for (const auto& a : geoms)
    for (const auto& b : geoms)
      EXPECT_EQ(relate_matrix(a.shape, b.shape).str(), testing_support::sampled_matrix(a.shape, b.shape).str())
          << a.iri << " / " << b.iri;
}

TEST(Oracle, RelateMatrixAgreesWithSamplingOnGridShapes) {
  std::mt19937 rng(424242);
  for (int i = 0; i < 400; ++i) {
    const auto a = testing_support::random_grid_geometry(rng);
    const auto b = testing_support::random_grid_geometry(rng);
    EXPECT_EQ(relate_matrix(a, b).str(), testing_support::sampled_matrix(a, b).str())
        << serialize(a, Serialization::WKT, false) << " / " << serialize(b, Serialization::WKT, false);
  }
}

TEST(Identities, DualAndInversePredicates) {
  const auto geoms = non_empty();
  for (const auto& ra : geoms)
    for (const auto& rb : geoms) {
      const auto& a = ra.shape;
      const auto& b = rb.shape;
      EXPECT_EQ(relate_matrix(b, a), relate_matrix(a, b).transposed());
      EXPECT_EQ(topological_predicate(Predicate::sfContains, a, b), topological_predicate(Predicate::sfWithin, b, a));
      EXPECT_EQ(topological_predicate(Predicate::ehCovers, a, b), topological_predicate(Predicate::ehCoveredBy, b, a));
      EXPECT_EQ(topological_predicate(Predicate::ehContains, a, b), topological_predicate(Predicate::ehInside, b, a));
      EXPECT_EQ(topological_predicate(Predicate::rcc8tpp, a, b), topological_predicate(Predicate::rcc8tppi, b, a));
      EXPECT_EQ(topological_predicate(Predicate::rcc8ntpp, a, b), topological_predicate(Predicate::rcc8ntppi, b, a));
      EXPECT_EQ(topological_predicate(Predicate::sfDisjoint, a, b), !topological_predicate(Predicate::sfIntersects, a, b));
      EXPECT_EQ(topological_predicate(Predicate::sfEquals, a, b), topological_predicate(Predicate::sfEquals, b, a));
    }
}

TEST(Identities, Rcc8IsAPartitionOnSurfaces) {
  const auto geoms = non_empty();
  const Predicate rcc8[] = {Predicate::rcc8eq,  Predicate::rcc8dc,  Predicate::rcc8ec,   Predicate::rcc8po,
                            Predicate::rcc8tpp, Predicate::rcc8tppi, Predicate::rcc8ntpp, Predicate::rcc8ntppi};
  for (const auto& a : geoms)
    for (const auto& b : geoms) {
      if (a.shape.dimension() != 2 || b.shape.dimension() != 2) continue;
      int holding = 0;
      for (const auto p : rcc8) holding += topological_predicate(p, a.shape, b.shape);
      EXPECT_EQ(holding, 1) << a.iri << " / " << b.iri;
    }
}

TEST(Errors, EmptyOperandsAreRejected) {
  EXPECT_THROW(relate_matrix(wkt("Point EMPTY"), wkt("Point(1 1)")), GeometryError);
}

}  // namespace
}  // namespace gsb
