// The 206 tests. Queries are written against the benchmark dataset; every
// expected answer is computed here from the dataset records and the geometry
// functions rather than by running a query engine.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>

#include "gsb/catalog.hpp"
#include "gsb/dataset.hpp"
#include "gsb/geometry/functions.hpp"
#include "gsb/geometry/topology.hpp"

namespace gsb::catalog {

namespace {

namespace geom = gsb::geometry;
using dataset::BenchmarkDataset;
using geom::Geometry;
using geom::Serialization;
using rdf::Term;
using results::Row;
using results::SolutionSequence;

const std::string kPrefixes =
    "PREFIX geo: <http://www.opengis.net/ont/geosparql#>\n"
    "PREFIX geof: <http://www.opengis.net/def/function/geosparql/>\n"
    "PREFIX sf: <http://www.opengis.net/ont/sf#>\n"
    "PREFIX gml: <http://www.opengis.net/ont/gml#>\n"
    "PREFIX my: <http://example.org/ApplicationSchema#>\n";

const std::string kDegree = "<http://www.opengis.net/def/uom/OGC/1.0/degree>";

std::string pname(const std::string& iri) {
  for (const auto& [prefix, ns] : rdf::standard_prefixes())
    if (iri.starts_with(ns)) return prefix + ":" + iri.substr(ns.size());
  return "<" + iri + ">";
}

AnswerSpec boolean_answer(bool value) {
  AnswerSpec a{CheckerKind::Boolean, 1e-6, {}};
  if (value) a.alternatives = {std::string("true"), std::string("1")};
  else a.alternatives = {std::string("false"), std::string("0")};
  return a;
}

AnswerSpec numeric_answer(double value) { return {CheckerKind::Numeric, 1e-6, {value}}; }

AnswerSpec literal_answer(std::vector<Term> terms) {
  AnswerSpec a{CheckerKind::LiteralNormalized, 1e-6, {}};
  for (auto& t : terms) a.alternatives.emplace_back(std::move(t));
  return a;
}

// Results are accepted in either serialization.
AnswerSpec geometry_answer(const std::vector<Geometry>& shapes) {
  AnswerSpec a{CheckerKind::GeometrySemantic, 1e-6, {}};
  for (const auto& g : shapes) {
    a.alternatives.emplace_back(Term::literal(geom::serialize(g, Serialization::WKT, true), rdf::geo("wktLiteral")));
    a.alternatives.emplace_back(Term::literal(geom::serialize(g, Serialization::GML, true), rdf::geo("gmlLiteral")));
  }
  return a;
}

AnswerSpec list_answer(CheckerKind kind, std::vector<std::string> vars, std::vector<Row> rows) {
  return {kind, 1e-6, {SolutionSequence{std::move(vars), std::move(rows)}}};
}

Row iri_row(const std::string& var, const std::string& iri) { return {{var, Term::iri(iri)}}; }

// Naive RDFS reasoning over the dataset, independent of the endpoint's closure code.
class Entailment {
 public:
  explicit Entailment(const BenchmarkDataset& ds) : triples_(ds.all_triples()) {
    for (const auto& t : triples_) {
      if (t.predicate.value == rdf::rdfs("subClassOf")) super_class_[t.subject.value].push_back(t.object.value);
      if (t.predicate.value == rdf::rdfs("subPropertyOf")) super_prop_[t.subject.value].push_back(t.object.value);
    }
  }

  std::vector<std::string> instances(const std::string& cls, bool entail) const {
    std::set<std::string> out;
    for (const auto& t : triples_)
      if (t.predicate.value == rdf::rdf("type") && (entail ? reaches(super_class_, t.object.value, cls)
                                                           : t.object.value == cls))
        out.insert(t.subject.value);
    return {out.begin(), out.end()};
  }

  std::vector<std::pair<std::string, std::string>> pairs(const std::string& prop, bool entail) const {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& t : triples_)
      if (entail ? reaches(super_prop_, t.predicate.value, prop) : t.predicate.value == prop)
        out.emplace(t.subject.value, t.object.value);
    return {out.begin(), out.end()};
  }

 private:
  static bool reaches(const std::map<std::string, std::vector<std::string>>& up, const std::string& from,
                      const std::string& to) {
    if (from == to) return true;
    const auto it = up.find(from);
    if (it == up.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [&](const auto& s) { return reaches(up, s, to); });
  }

  std::vector<rdf::Triple> triples_;
  std::map<std::string, std::vector<std::string>> super_class_;
  std::map<std::string, std::vector<std::string>> super_prop_;
};

struct Variant {
  std::string name;  // "wkt-gml"
  Serialization first;
  Serialization second;
};

const Variant kBinaryVariants[] = {
    {"wkt-wkt", Serialization::WKT, Serialization::WKT},
    {"gml-gml", Serialization::GML, Serialization::GML},
    {"wkt-gml", Serialization::WKT, Serialization::GML},
    {"gml-wkt", Serialization::GML, Serialization::WKT},
};

const Variant kUnaryVariants[] = {
    {"wkt", Serialization::WKT, Serialization::WKT},
    {"gml", Serialization::GML, Serialization::GML},
};

std::string as_property(Serialization s) { return s == Serialization::WKT ? "geo:asWKT" : "geo:asGML"; }

Rational variant_weight(const std::string& name) {
  if (name == "wkt-wkt" || name == "gml-gml") return {1, 3};
  if (name == "wkt-gml" || name == "gml-wkt") return {1, 6};
  return {1, 2};
}

class Author {
 public:
  explicit Author(const BenchmarkDataset& ds) : ds_(ds), rdfs_(ds) {}

  Catalog build() {
    core();
    topology_vocabulary();
    geometry_extension();
    geometry_topology();
    rdfs_entailment();
    query_rewrite();
    return std::move(catalog_);
  }

 private:
  void add(int req, const std::string& slug, const std::string& comment, const std::string& body, AnswerSpec answer,
           Rational weight, std::string group = {}, std::string serialization = {}) {
    TestCase t;
    t.id = "req" + std::to_string(req) + "-" + slug;
    t.requirement = req;
    t.extension = extension_of(req);
    t.group = std::move(group);
    t.serialization = std::move(serialization);
    char file[128];
    std::snprintf(file, sizeof file, "queries/req%02d-%s.rq", req, slug.c_str());
    t.query_file = file;
    t.query = comment + kPrefixes + "\n" + body;
    t.answer = std::move(answer);
    if (t.answer.kind == CheckerKind::OrderedList || t.answer.kind == CheckerKind::UnorderedSet) {
      std::snprintf(file, sizeof file, "answers/req%02d-%s.json", req, slug.c_str());
      t.answers_file = file;
    }
    t.weight = weight;
    catalog_.tests.push_back(std::move(t));
  }

  std::string exact(const std::string& name) const { return pname(ds_.exact(name).iri); }

  const Geometry& shape(const std::string& name) const { return ds_.exact(name).shape; }

  void core() {
    // First triple of geometry A in (predicate, object) order.
    std::vector<rdf::Triple> about_a;
    for (const auto& t : ds_.data_triples)
      if (t.subject.value == ds_.exact("A").iri) about_a.push_back(t);
    const auto first = *std::min_element(about_a.begin(), about_a.end(), [](const auto& x, const auto& y) {
      return std::tie(x.predicate.value, x.object.value) < std::tie(y.predicate.value, y.object.value);
    });
    add(1, "first-triple",
        "# Requirement 1: SPARQL query language, protocol and results format.\n"
        "# Selects the first triple about geometry A in a fixed order.\n",
        "SELECT ?p ?o WHERE {\n  my:AExactGeom ?p ?o .\n}\nORDER BY ?p ?o\nLIMIT 1\n",
        list_answer(CheckerKind::OrderedList, {"p", "o"}, {{{"p", first.predicate}, {"o", first.object}}}), {1, 1});

    const auto objects = rdfs_.instances(rdf::geo("SpatialObject"), true);
    add(2, "first-spatial-object",
        "# Requirement 2: class geo:SpatialObject in graph patterns.\n"
        "# Selects the first spatial object in IRI order.\n",
        "SELECT ?s WHERE {\n  ?s a geo:SpatialObject .\n}\nORDER BY ?s\nLIMIT 1\n",
        list_answer(CheckerKind::OrderedList, {"s"}, {iri_row("s", objects.front())}), {1, 1});

    const auto features = rdfs_.instances(rdf::geo("Feature"), true);
    add(3, "first-feature",
        "# Requirement 3: class geo:Feature in graph patterns.\n"
        "# Selects the first feature in IRI order.\n",
        "SELECT ?f WHERE {\n  ?f a geo:Feature .\n}\nORDER BY ?f\nLIMIT 1\n",
        list_answer(CheckerKind::OrderedList, {"f"}, {iri_row("f", features.front())}), {1, 1});
  }

  static int relation_requirement(geom::Predicate p, int base) {
    return base + static_cast<int>(geom::predicate_family(p));
  }

  static std::string family_text(geom::Predicate p) {
    switch (geom::predicate_family(p)) {
      case geom::PredicateFamily::SimpleFeatures: return "Simple Features";
      case geom::PredicateFamily::Egenhofer: return "Egenhofer";
      case geom::PredicateFamily::Rcc8: return "RCC8";
    }
    return "";
  }

  std::vector<std::string> related_objects(geom::Predicate p, const std::string& subject_iri) const {
    std::vector<std::string> out;
    for (const auto& [s, o] : dataset::relation_pairs(ds_, p))
      if (s == subject_iri) out.push_back(o);
    return out;
  }

  // Requirements 4-6: the asserted relation triple is the first result.
  void topology_vocabulary() {
    for (const auto p : geom::all_predicates()) {
      const std::string name(geom::predicate_name(p));
      const auto subject = ds_.exact(dataset::relation_witness(p).first).iri;
      const auto objects = related_objects(p, subject);
      const int req = relation_requirement(p, 4);
      add(req, name,
          "# Requirement " + std::to_string(req) + ": " + family_text(p) + " property geo:" + name +
              " in graph patterns.\n# The first related object is the asserted triple's object.\n",
          "SELECT ?o WHERE {\n  " + pname(subject) + " geo:" + name + " ?o .\n}\nORDER BY ?o\nLIMIT 1\n",
          list_answer(CheckerKind::OrderedList, {"o"}, {iri_row("o", objects.front())}), {1, 8}, name);
    }
  }

  void geometry_extension() {
    const auto geometries = rdfs_.instances(rdf::geo("Geometry"), false);
    std::vector<Row> rows;
    for (const auto& g : geometries) rows.push_back(iri_row("g", g));
    add(7, "geometries",
        "# Requirement 7: class geo:Geometry in graph patterns.\n# Selects every geometry.\n",
        "SELECT ?g WHERE {\n  ?g a geo:Geometry .\n}\n", list_answer(CheckerKind::UnorderedSet, {"g"}, rows), {1, 1});

    for (const std::string prop : {"hasGeometry", "hasDefaultGeometry"}) {
      std::vector<Row> geoms;
      for (const auto& [s, o] : rdfs_.pairs(rdf::geo(prop), false))
        if (s == rdf::my("A")) geoms.push_back(iri_row("g", o));
      add(8, prop,
          "# Requirement 8: property geo:" + prop + " in graph patterns.\n# Selects the " +
              (prop == "hasGeometry" ? "geometries" : "default geometry") + " of feature A.\n",
          "SELECT ?g WHERE {\n  my:A geo:" + prop + " ?g .\n}\n", list_answer(CheckerKind::UnorderedSet, {"g"}, geoms),
          {1, 2}, prop);
    }

    auto value_of = [&](const std::string& subject, const std::string& predicate) {
      for (const auto& t : ds_.data_triples)
        if (t.subject.value == subject && t.predicate.value == predicate) return t.object;
      throw CatalogError("dataset has no " + predicate + " for " + subject);
    };
    const auto a = ds_.exact("A").iri;
    for (const std::string prop :
         {"dimension", "coordinateDimension", "spatialDimension", "isEmpty", "isSimple", "hasSerialization"}) {
      AnswerSpec answer;
      if (prop == "hasSerialization") {
        answer = literal_answer({value_of(a, rdf::geo(prop))});
      } else {
        const auto value = geom::geometry_property(prop, shape("A"));
        if (const auto* n = std::get_if<int>(&value)) answer = numeric_answer(*n);
        else answer = boolean_answer(std::get<bool>(value));
      }
      add(9, prop,
          "# Requirement 9: property geo:" + prop + " in graph patterns.\n# Selects the value for geometry A.\n",
          "SELECT ?value WHERE {\n  my:AExactGeom geo:" + prop + " ?value .\n}\n", std::move(answer), {1, 6}, prop);
    }

    add(10, "wkt-literal-datatype",
        "# Requirement 10: geo:wktLiteral values carry the WKT datatype.\n",
        "ASK {\n  my:AExactGeom geo:asWKT ?wkt .\n  FILTER(datatype(?wkt) = geo:wktLiteral)\n}\n",
        boolean_answer(value_of(a, rdf::geo("asWKT")).datatype == rdf::geo("wktLiteral")), {1, 1});

    add(11, "default-crs",
        "# Requirement 11: CRS84 is assumed for WKT literals without a CRS IRI.\n"
        "# J has no CRS IRI, K names CRS84 explicitly.\n",
        "ASK {\n  my:JExactGeom geo:asWKT ?j .\n  my:KExactGeom geo:asWKT ?k .\n  FILTER(geof:sfEquals(?j, ?k))\n}\n",
        boolean_answer(geom::geometry_equals(shape("J"), shape("K"), 0)), {1, 1});

    add(12, "axis-order",
        "# Requirement 12: coordinates follow the axis order of the CRS.\n"
        "# L is CRS84 (lon lat), M is EPSG:4326 (lat lon).\n",
        "ASK {\n  my:LExactGeom geo:asWKT ?l .\n  my:MExactGeom geo:asWKT ?m .\n  FILTER(geof:sfEquals(?l, ?m))\n}\n",
        boolean_answer(geom::geometry_equals(shape("L"), shape("M"), 0)), {1, 1});

    empty_pair(13, Serialization::WKT);

    add(14, "as-wkt",
        "# Requirement 14: property geo:asWKT in graph patterns.\n",
        "SELECT ?wkt WHERE {\n  my:AExactGeom geo:asWKT ?wkt .\n}\n", literal_answer({value_of(a, rdf::geo("asWKT"))}),
        {1, 1});

    std::vector<std::string> gml;
    for (const auto& g : ds_.geometries) gml.push_back(g.gml);
    std::sort(gml.begin(), gml.end());
    std::vector<Row> gml_rows;
    for (const auto& text : gml) gml_rows.push_back({{"gml", Term::literal(text, rdf::geo("gmlLiteral"))}});
    add(15, "gml-literals",
        "# Requirement 15: geo:gmlLiteral values are GML geometry elements.\n"
        "# Lists every GML literal in lexical order.\n",
        "SELECT ?gml WHERE {\n  ?g geo:asGML ?gml .\n}\nORDER BY ?gml\n",
        list_answer(CheckerKind::OrderedList, {"gml"}, gml_rows), {1, 1});

    empty_pair(16, Serialization::GML);

    add(18, "as-gml",
        "# Requirement 18: property geo:asGML in graph patterns.\n",
        "SELECT ?gml WHERE {\n  my:AExactGeom geo:asGML ?gml .\n}\n", literal_answer({value_of(a, rdf::geo("asGML"))}),
        {1, 1});

    functions();
    srid();
  }

  // Requirements 13 and 16: empty literals equal explicitly empty geometries.
  void empty_pair(int req, Serialization ser) {
    const std::string label = ser == Serialization::WKT ? "WKT" : "GML";
    for (const bool exact_geometry : {true, false}) {
      const auto& h = exact_geometry ? ds_.exact("H") : ds_.point("H");
      const auto& i = exact_geometry ? ds_.exact("I") : ds_.point("I");
      const std::string kind = exact_geometry ? "linestring" : "point";
      add(req, "empty-" + kind,
          "# Requirement " + std::to_string(req) + ": an empty " + label +
              " literal is an empty geometry.\n# H's literal is the empty string, I's is an explicitly empty " +
              (exact_geometry ? "LineString" : "Point") + ".\n",
          "ASK {\n  " + pname(h.iri) + " " + as_property(ser) + " ?h .\n  " + pname(i.iri) + " " + as_property(ser) +
              " ?i .\n  FILTER(geof:sfEquals(?h, ?i))\n}\n",
          boolean_answer(geom::geometry_equals(h.shape, i.shape, 0)), {1, 2}, kind);
    }
  }

  struct FunctionCase {
    std::string name;
    std::vector<std::string> geometries;  // feature letters
    std::string extra_args;               // appended after the geometry arguments
    std::function<AnswerSpec()> expected;
  };

  void functions() {
    const std::vector<FunctionCase> cases = {
        {"distance", {"C", "D"}, ", " + kDegree,
         [&] { return numeric_answer(geom::distance(shape("C"), shape("D"), geom::DistanceUnit::Degree)); }},
        {"buffer", {"F"}, ", 1, " + kDegree,
         [&] { return geometry_answer({geom::buffer(shape("F"), 1, geom::DistanceUnit::Degree)}); }},
        {"convexHull", {"E"}, "", [&] { return geometry_answer({geom::convex_hull(shape("E"))}); }},
        {"intersection", {"B", "G"}, "", [&] { return geometry_answer({geom::intersection(shape("B"), shape("G"))}); }},
        {"union", {"B", "G"}, "", [&] { return geometry_answer({geom::geometry_union(shape("B"), shape("G"))}); }},
        {"difference", {"B", "G"}, "", [&] { return geometry_answer({geom::difference(shape("B"), shape("G"))}); }},
        {"symDifference", {"A", "G"}, "",
         [&] { return geometry_answer({geom::sym_difference(shape("A"), shape("G"))}); }},
        {"envelope", {"E"}, "", [&] { return geometry_answer({geom::envelope(shape("E"))}); }},
        // A boundary reported as the ring itself or as the polygon it bounds.
        {"boundary", {"A"}, "",
         [&] { return geometry_answer({geom::boundary(shape("A")), geom::canonical_form(shape("A"))}); }},
    };
    const Rational function_share(1, static_cast<std::int64_t>(cases.size()));
    for (const auto& c : cases) {
      const bool binary = c.geometries.size() == 2;
      for (const auto& v : binary ? std::span<const Variant>(kBinaryVariants) : std::span<const Variant>(kUnaryVariants)) {
        std::string body = "SELECT ?result WHERE {\n  " + exact(c.geometries[0]) + " " + as_property(v.first) + " ?a .\n";
        std::string args = "?a";
        if (binary) {
          body += "  " + exact(c.geometries[1]) + " " + as_property(v.second) + " ?b .\n";
          args += ", ?b";
        }
        body += "  BIND(geof:" + c.name + "(" + args + c.extra_args + ") AS ?result)\n}\n";
        add(19, c.name + "-" + v.name,
            "# Requirement 19: geof:" + c.name + " as a SPARQL extension function.\n# Arguments: " + v.name +
                " literals.\n",
            body, c.expected(), function_share * variant_weight(v.name), c.name, v.name);
      }
    }
  }

  void srid() {
    const std::string crs(geom::get_srid(shape("A")));
    for (const auto& v : kUnaryVariants) {
      add(20, "getSRID-" + v.name,
          "# Requirement 20: geof:getSRID as a SPARQL extension function.\n",
          "SELECT ?srid WHERE {\n  my:AExactGeom " + as_property(v.first) +
              " ?a .\n  BIND(geof:getSRID(?a) AS ?srid)\n}\n",
          literal_answer({Term::iri(crs), Term::literal(crs, rdf::xsd("anyURI")), Term::literal(crs)}), {1, 2},
          "getSRID", v.name);
    }
  }

  std::string binary_query(const std::string& first, const std::string& second, const Variant& v,
                           const std::string& call) const {
    return "SELECT ?result WHERE {\n  " + exact(first) + " " + as_property(v.first) + " ?a .\n  " + exact(second) +
           " " + as_property(v.second) + " ?b .\n  BIND(" + call + " AS ?result)\n}\n";
  }

  void geometry_topology() {
    const std::string pattern = "T*****FF*";
    for (const auto& v : kBinaryVariants)
      add(21, "relate-" + v.name,
          "# Requirement 21: geof:relate as a SPARQL extension function.\n"
          "# A contains B, pattern " + pattern + ".\n",
          binary_query("A", "B", v, "geof:relate(?a, ?b, \"" + pattern + "\")"),
          boolean_answer(geom::matches_pattern(geom::relate_matrix(shape("A"), shape("B")), pattern)),
          variant_weight(v.name), "relate", v.name);

    for (const auto p : geom::all_predicates()) {
      const std::string name(geom::predicate_name(p));
      const auto [first, second] = dataset::relation_witness(p);
      const int req = relation_requirement(p, 22);
      for (const auto& v : kBinaryVariants)
        add(req, name + "-" + v.name,
            "# Requirement " + std::to_string(req) + ": " + family_text(p) + " function geof:" + name +
                ".\n# Arguments: " + first + " and " + second + " as " + v.name + " literals.\n",
            binary_query(first, second, v, "geof:" + name + "(?a, ?b)"),
            boolean_answer(geom::topological_predicate(p, shape(first), shape(second))),
            Rational(1, 8) * variant_weight(v.name), name, v.name);
    }
  }

  void rdfs_entailment() {
    std::vector<Row> features;
    for (const auto& f : rdfs_.instances(rdf::geo("Feature"), true)) features.push_back(iri_row("f", f));
    add(25, "features",
        "# Requirement 25: RDFS entailment, instances of subclasses of geo:Feature.\n",
        "SELECT ?f WHERE {\n  ?f a geo:Feature .\n}\n", list_answer(CheckerKind::UnorderedSet, {"f"}, features), {1, 3},
        "Feature");
    for (const std::string prop : {"hasGeometry", "hasDefaultGeometry"}) {
      std::vector<Row> rows;
      for (const auto& [s, o] : rdfs_.pairs(rdf::geo(prop), true))
        rows.push_back({{"f", Term::iri(s)}, {"g", Term::iri(o)}});
      add(25, prop,
          "# Requirement 25: RDFS entailment, statements made with subproperties of geo:" + prop + ".\n",
          "SELECT ?f ?g WHERE {\n  ?f geo:" + prop + " ?g .\n}\n",
          list_answer(CheckerKind::UnorderedSet, {"f", "g"}, rows), {1, 3}, prop);
    }
    auto class_test = [&](int req, const std::string& cls_iri, const std::string& slug, Rational weight,
                          const std::string& comment) {
      std::vector<Row> rows;
      for (const auto& g : rdfs_.instances(cls_iri, true)) rows.push_back(iri_row("g", g));
      add(req, slug, comment, "SELECT ?g WHERE {\n  ?g a " + pname(cls_iri) + " .\n}\n",
          list_answer(CheckerKind::UnorderedSet, {"g"}, rows), weight, slug);
    };
    class_test(26, rdf::sf("Surface"), "sf-surface", {1, 2},
               "# Requirement 26: Simple Features class hierarchy, sf:Polygon instances are sf:Surface.\n");
    class_test(26, rdf::sf("Curve"), "sf-curve", {1, 2},
               "# Requirement 26: Simple Features class hierarchy, sf:LineString instances are sf:Curve.\n");
    class_test(27, rdf::gml("Surface"), "gml-surface", {1, 1},
               "# Requirement 27: GML class hierarchy, gml:Polygon instances are gml:Surface.\n");
  }

  // Requirements 28-30: asserted and computed relations together.
  void query_rewrite() {
    for (const auto p : geom::all_predicates()) {
      const std::string name(geom::predicate_name(p));
      const auto subject = ds_.exact(dataset::relation_witness(p).first).iri;
      std::vector<Row> rows;
      for (const auto& o : related_objects(p, subject)) rows.push_back(iri_row("o", o));
      const int req = relation_requirement(p, 28);
      add(req, name,
          "# Requirement " + std::to_string(req) + ": query rewrite rule for geo:" + name +
              ".\n# Every object related to the subject, asserted or computed from the literals.\n",
          "SELECT ?o WHERE {\n  " + pname(subject) + " geo:" + name + " ?o .\n}\nORDER BY ?o\n",
          list_answer(CheckerKind::OrderedList, {"o"}, rows), {1, 8}, name);
    }
  }

  const BenchmarkDataset& ds_;
  Entailment rdfs_;
  Catalog catalog_;
};

}  // namespace

Catalog builtin_catalog() {
  Catalog c = Author(dataset::benchmark_dataset()).build();
  std::stable_sort(c.tests.begin(), c.tests.end(),
                   [](const TestCase& a, const TestCase& b) { return a.requirement < b.requirement; });
  return c;
}

}  // namespace gsb::catalog
