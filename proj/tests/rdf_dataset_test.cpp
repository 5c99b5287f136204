#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "gsb/dataset.hpp"
#include "gsb/geometry/topology.hpp"
#include "gsb/rdf.hpp"
#include "gsb/xml.hpp"

namespace gsb {
namespace {

using rdf::Term;
using rdf::Triple;

std::set<Triple> as_set(const std::vector<Triple>& v) { return {v.begin(), v.end()}; }

// Reads the flat rdf:Description layout the writer produces, independently of it.
std::set<Triple> read_flat_rdfxml(const std::string& text) {
  const std::string rdf_ns(rdf::kRdf);
  std::set<Triple> out;
  const auto root = xml::parse(text);
  for (const auto& d : root.children) {
    const auto* about = d.attribute("about");
    const auto* node = d.attribute("nodeID");
    const Term subject = about ? Term::iri(*about) : Term::blank(node ? *node : "");
    for (const auto& p : d.children) {
      const Term predicate = Term::iri(p.ns + p.local);
      Term object;
      if (const auto* r = p.attribute("resource")) object = Term::iri(*r);
      else if (const auto* n = p.attribute("nodeID")) object = Term::blank(*n);
      else if (const auto* dt = p.attribute("datatype")) object = Term::literal(p.text, *dt);
      else if (const auto* lang = p.attribute("lang")) object = Term::lang_literal(p.text, *lang);
      else object = Term::literal(p.text);
      out.insert({subject, predicate, object});
    }
  }
  return out;
}

TEST(Turtle, ParsesShorthandAndEscapes) {
  const auto triples = rdf::parse_turtle(R"(
    @prefix ex: <http://example.org/> .
    PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>
    ex:s a ex:C ;
      ex:p "tab\there"@en, 42, true, 1.5, "x"^^xsd:token ;
      ex:q [ ex:r ex:o ] .
    _:b ex:p """long
    string""" .
  )");
  const auto set = as_set(triples);
  EXPECT_EQ(triples.size(), 9u);
  EXPECT_TRUE(set.count({Term::iri("http://example.org/s"), Term::iri(rdf::rdf("type")), Term::iri("http://example.org/C")}));
  EXPECT_TRUE(set.count({Term::iri("http://example.org/s"), Term::iri("http://example.org/p"), Term::lang_literal("tab\there", "en")}));
  EXPECT_TRUE(set.count({Term::iri("http://example.org/s"), Term::iri("http://example.org/p"), Term::integer(42)}));
  EXPECT_TRUE(set.count({Term::iri("http://example.org/s"), Term::iri("http://example.org/p"), Term::boolean(true)}));
  EXPECT_TRUE(set.count({Term::iri("http://example.org/s"), Term::iri("http://example.org/p"), Term::literal("1.5", rdf::xsd("decimal"))}));
}

TEST(Turtle, ReportsLineOfSyntaxError) {
  try {
    rdf::parse_turtle("@prefix ex: <http://example.org/> .\n\nex:s ex:p .\n");
    FAIL() << "expected a syntax error";
  } catch (const rdf::SyntaxError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(rdf::parse_turtle("nope:s <http://p> <http://o> ."), rdf::SyntaxError);
}

TEST(Turtle, WriterRoundTripsDataset) {
  const auto triples = dataset::benchmark_dataset().all_triples();
  EXPECT_EQ(as_set(rdf::parse_turtle(rdf::write_turtle(triples))), as_set(triples));
  EXPECT_EQ(as_set(rdf::parse_turtle(rdf::write_ntriples(triples))), as_set(triples));
}

TEST(RdfXml, EmitsSameGraphAsTurtle) {
  const auto triples = dataset::benchmark_dataset().all_triples();
  EXPECT_EQ(read_flat_rdfxml(dataset::emit(triples, dataset::Format::RdfXml)), as_set(triples));
}

TEST(Dataset, FormatNames) {
  EXPECT_EQ(dataset::format_from_name("ttl"), dataset::Format::Turtle);
  EXPECT_EQ(dataset::format_from_name("rdfxml"), dataset::Format::RdfXml);
  EXPECT_THROW(dataset::format_from_name("jsonld"), std::invalid_argument);
}

TEST(Dataset, FeaturesAndGeometries) {
  const auto& ds = dataset::benchmark_dataset();
  EXPECT_EQ(ds.features.size(), 13u);  // A .. M
  EXPECT_TRUE(ds.exact("H").shape.is_empty());
  EXPECT_TRUE(ds.exact("I").shape.is_empty());
  EXPECT_EQ(ds.exact("H").wkt, "");
  EXPECT_EQ(ds.exact("I").wkt, "LineString EMPTY");
  EXPECT_EQ(ds.exact("J").wkt,
            "Polygon((-77.089005 38.913574, -77.029953 38.913574, -77.029953 38.886321, -77.089005 38.886321, "
            "-77.089005 38.913574))");
  EXPECT_EQ(ds.exact("L").wkt, "<http://www.opengis.net/def/crs/OGC/1.3/CRS84> Point(-88.38  31.95)");
  EXPECT_EQ(ds.exact("M").wkt, "<http://www.opengis.net/def/crs/EPSG/0/4326>   Point( 31.95 -88.38)");
  EXPECT_THROW(ds.exact("Z"), std::out_of_range);
  for (const auto& g : ds.geometries) {
    EXPECT_EQ(geometry::parse_wkt(g.wkt).parsed, g.shape) << g.iri;
    EXPECT_EQ(geometry::parse_gml(g.gml).parsed, g.shape) << g.iri;
  }
}

TEST(Dataset, FeatureRelationsFollowTheFigure) {
  const auto& ds = dataset::benchmark_dataset();
  using geometry::Predicate;
  auto holds = [&](Predicate p, const char* a, const char* b) {
    return geometry::topological_predicate(p, ds.exact(a).shape, ds.exact(b).shape);
  };
  EXPECT_TRUE(holds(Predicate::sfContains, "A", "B"));
  EXPECT_TRUE(holds(Predicate::sfTouches, "A", "C"));
  EXPECT_TRUE(holds(Predicate::sfOverlaps, "A", "D"));
  EXPECT_TRUE(holds(Predicate::sfCrosses, "E", "B"));
  EXPECT_TRUE(holds(Predicate::sfDisjoint, "B", "C"));
  EXPECT_TRUE(holds(Predicate::ehCovers, "A", "G"));
}

TEST(Dataset, OneAssertedTriplePerRelation) {
  const auto& ds = dataset::benchmark_dataset();
  for (const auto p : geometry::all_predicates()) {
    const auto iri = rdf::geo(geometry::predicate_name(p));
    const auto n = std::count_if(ds.data_triples.begin(), ds.data_triples.end(),
                                 [&](const Triple& t) { return t.predicate.value == iri; });
    EXPECT_EQ(n, 1) << iri;
  }
}

TEST(Dataset, EveryGeometryHasBothSerializations) {
  const auto& ds = dataset::benchmark_dataset();
  for (const auto& g : ds.geometries) {
    int wkt = 0, gml = 0;
    for (const auto& t : ds.data_triples) {
      if (t.subject.value != g.iri) continue;
      wkt += t.predicate.value == rdf::geo("asWKT");
      gml += t.predicate.value == rdf::geo("asGML");
    }
    EXPECT_EQ(wkt, 1) << g.iri;
    EXPECT_EQ(gml, 1) << g.iri;
  }
}

}  // namespace
}  // namespace gsb
