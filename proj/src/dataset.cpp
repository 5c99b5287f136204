#include "gsb/dataset.hpp"

#include <algorithm>
#include <stdexcept>

#include "gsb/geometry/functions.hpp"

namespace gsb::dataset {

namespace {

namespace geom = gsb::geometry;
using geom::Coord;
using geom::Geometry;
using geom::GeometryKind;
using rdf::Term;
using rdf::Triple;

const std::string kCrs84Prefix = "<" + std::string(geom::kCrs84Uri) + "> ";

// Literals published verbatim for the CRS and empty-geometry witnesses.
const std::string kJWkt =
    "Polygon((-77.089005 38.913574, -77.029953 38.913574, -77.029953 38.886321, -77.089005 38.886321, "
    "-77.089005 38.913574))";
const std::string kKWkt = kCrs84Prefix + kJWkt;
const std::string kLWkt = "<http://www.opengis.net/def/crs/OGC/1.3/CRS84> Point(-88.38  31.95)";
const std::string kMWkt = "<http://www.opengis.net/def/crs/EPSG/0/4326>   Point( 31.95 -88.38)";

Geometry rect(double x0, double y0, double x1, double y1) {
  return Geometry::polygon({{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}});
}

struct Spec {
  std::string name;
  GeometryKind kind;
  std::string wkt;  // empty: serialize `shape`
  Geometry shape;
  bool has_point = false;
  std::string point_wkt;
  Geometry point;
};

std::vector<Spec> specs() {
  const auto pt = [](double x, double y) { return Geometry::point({x, y}); };
  return {
      {"A", GeometryKind::Polygon, "", rect(-0.5, -0.5, 5.25, 6.0), true, "", pt(2.5, 3.0)},
      {"B", GeometryKind::Polygon, "", rect(1.0, 1.0, 4.0, 5.0), true, "", pt(1.0, 1.0)},
      {"C", GeometryKind::Polygon, "", rect(5.25, 3.0, 7.75, 6.0), true, "", pt(6.5, 4.5)},
      {"D", GeometryKind::Polygon, "", rect(4.0, -2.0, 6.5, 1.0), true, "", pt(5.25, -0.5)},
      {"E", GeometryKind::LineString, "", Geometry::line_string({{3.0, -2.0}, {4.0, 3.0}}), false, "", {}},
      {"F", GeometryKind::Point, "", pt(2.5, 5.0), false, "", {}},
      {"G", GeometryKind::Polygon, "", rect(-0.5, -0.5, 2.5, 3.0), true, "", pt(2.5, 3.0)},
      {"H", GeometryKind::LineString, " ", {}, true, " ", {}},
      {"I", GeometryKind::LineString, "LineString EMPTY", Geometry::empty(GeometryKind::LineString), true,
       "Point EMPTY", Geometry::empty(GeometryKind::Point)},
      {"J", GeometryKind::Polygon, kJWkt, {}, false, "", {}},
      {"K", GeometryKind::Polygon, kKWkt, {}, false, "", {}},
      {"L", GeometryKind::Point, kLWkt, {}, false, "", {}},
      {"M", GeometryKind::Point, kMWkt, {}, false, "", {}},
  };
}

// " " marks the empty-string literal.
GeometryRecord make_record(const std::string& name, bool exact, GeometryKind kind, const std::string& wkt,
                           const Geometry& shape) {
  GeometryRecord r;
  r.name = name;
  r.feature_iri = rdf::my(name);
  r.iri = rdf::my(name + (exact ? "ExactGeom" : "PointGeom"));
  r.exact = exact;
  r.kind = kind;
  if (wkt == " ") {
    r.wkt.clear();
    r.gml.clear();
    r.shape = Geometry();
    return r;
  }
  r.wkt = wkt.empty() ? geom::serialize(shape, geom::Serialization::WKT, true) : wkt;
  r.shape = geom::parse_wkt(r.wkt).parsed;
  r.gml = geom::serialize(r.shape.is_empty() ? Geometry::empty(kind) : r.shape, geom::Serialization::GML,
                          !r.shape.is_empty());
  return r;
}

Term lit(std::string lexical, std::string datatype) { return Term::literal(std::move(lexical), std::move(datatype)); }

void add_geometry_triples(std::vector<Triple>& out, const GeometryRecord& r) {
  const Term s = Term::iri(r.iri);
  auto add = [&](const std::string& p, Term o) { out.push_back({s, Term::iri(p), std::move(o)}); };
  const std::string kind(geom::kind_name(r.kind));
  if (r.exact) add(rdf::rdf("type"), Term::iri(rdf::geo("Geometry")));
  add(rdf::rdf("type"), Term::iri(rdf::sf(kind)));
  add(rdf::rdf("type"), Term::iri(rdf::gml(kind)));
  add(rdf::rdfs("label"), Term::literal(r.name + (r.exact ? " exact geometry" : " point geometry")));
  const Term wkt = lit(r.wkt, rdf::geo("wktLiteral"));
  add(rdf::geo("asWKT"), wkt);
  add(rdf::geo("asGML"), lit(r.gml, rdf::geo("gmlLiteral")));
  add(rdf::geo("hasSerialization"), wkt);
  // Properties follow the declared kind; H's literal is empty but it is a LineString.
  const Geometry typed = r.shape.is_empty() ? Geometry::empty(r.kind) : r.shape;
  add(rdf::geo("dimension"), Term::integer(std::get<int>(geom::geometry_property("dimension", typed))));
  add(rdf::geo("coordinateDimension"),
      Term::integer(std::get<int>(geom::geometry_property("coordinateDimension", typed))));
  add(rdf::geo("spatialDimension"), Term::integer(std::get<int>(geom::geometry_property("spatialDimension", typed))));
  add(rdf::geo("isEmpty"), Term::boolean(std::get<bool>(geom::geometry_property("isEmpty", typed))));
  add(rdf::geo("isSimple"), Term::boolean(std::get<bool>(geom::geometry_property("isSimple", typed))));
}

std::vector<Triple> schema() {
  std::vector<Triple> out;
  auto sub_class = [&](const std::string& a, const std::string& b) {
    out.push_back({Term::iri(a), Term::iri(rdf::rdfs("subClassOf")), Term::iri(b)});
  };
  auto sub_property = [&](const std::string& a, const std::string& b) {
    out.push_back({Term::iri(a), Term::iri(rdf::rdfs("subPropertyOf")), Term::iri(b)});
  };
  sub_class(rdf::my("PlaceOfInterest"), rdf::geo("Feature"));
  sub_class(rdf::geo("Feature"), rdf::geo("SpatialObject"));
  sub_class(rdf::geo("Geometry"), rdf::geo("SpatialObject"));
  sub_class(rdf::sf("Point"), rdf::sf("Geometry"));
  sub_class(rdf::sf("Curve"), rdf::sf("Geometry"));
  sub_class(rdf::sf("LineString"), rdf::sf("Curve"));
  sub_class(rdf::sf("Surface"), rdf::sf("Geometry"));
  sub_class(rdf::sf("Polygon"), rdf::sf("Surface"));
  sub_class(rdf::gml("LineString"), rdf::gml("Curve"));
  sub_class(rdf::gml("Polygon"), rdf::gml("Surface"));
  sub_property(rdf::my("hasExactGeometry"), rdf::geo("hasDefaultGeometry"));
  sub_property(rdf::geo("hasDefaultGeometry"), rdf::geo("hasGeometry"));
  sub_property(rdf::my("hasPointGeometry"), rdf::geo("hasGeometry"));
  return out;
}

}  // namespace

std::vector<Triple> BenchmarkDataset::all_triples() const {
  std::vector<Triple> out = data_triples;
  out.insert(out.end(), schema_triples.begin(), schema_triples.end());
  return out;
}

const GeometryRecord& BenchmarkDataset::geometry(std::string_view iri) const {
  for (const auto& g : geometries)
    if (g.iri == iri) return g;
  throw std::out_of_range("no geometry <" + std::string(iri) + ">");
}

const GeometryRecord& BenchmarkDataset::exact(std::string_view name) const {
  return geometry(rdf::my(std::string(name) + "ExactGeom"));
}

const GeometryRecord& BenchmarkDataset::point(std::string_view name) const {
  return geometry(rdf::my(std::string(name) + "PointGeom"));
}

BenchmarkDataset build_dataset() {
  BenchmarkDataset ds;
  ds.schema_triples = schema();
  auto& out = ds.data_triples;
  const Term type = Term::iri(rdf::rdf("type"));

  for (const auto& s : specs()) {
    const Term feature = Term::iri(rdf::my(s.name));
    ds.features.push_back(feature.value);
    const auto& exact = ds.geometries.emplace_back(make_record(s.name, true, s.kind, s.wkt, s.shape));
    out.push_back({feature, type, Term::iri(rdf::my("PlaceOfInterest"))});
    out.push_back({feature, Term::iri(rdf::rdfs("label")), Term::literal(s.name)});
    out.push_back({feature, Term::iri(rdf::my("hasExactGeometry")), Term::iri(exact.iri)});
    add_geometry_triples(out, exact);
    if (s.has_point) {
      const auto& point = ds.geometries.emplace_back(make_record(s.name, false, GeometryKind::Point, s.point_wkt, s.point));
      out.push_back({feature, Term::iri(rdf::my("hasPointGeometry")), Term::iri(point.iri)});
      add_geometry_triples(out, point);
    }
  }

  // Feature A is also described directly in GeoSPARQL terms so that the core
  // and geometry-extension queries have answers without entailment.
  const Term a = Term::iri(rdf::my("A"));
  out.push_back({a, type, Term::iri(rdf::geo("Feature"))});
  out.push_back({a, type, Term::iri(rdf::geo("SpatialObject"))});
  out.push_back({a, Term::iri(rdf::geo("hasGeometry")), Term::iri(ds.exact("A").iri)});
  out.push_back({a, Term::iri(rdf::geo("hasGeometry")), Term::iri(ds.point("A").iri)});
  out.push_back({a, Term::iri(rdf::geo("hasDefaultGeometry")), Term::iri(ds.exact("A").iri)});

  // One asserted triple per relation: the witness geometry related to the
  // object that sorts first among all objects the relation holds for.
  for (const auto p : geom::all_predicates()) {
    const std::string subject = ds.exact(relation_witness(p).first).iri;
    const auto pairs = relation_pairs(ds, p);
    const auto it = std::find_if(pairs.begin(), pairs.end(), [&](const auto& pr) { return pr.first == subject; });
    if (it == pairs.end()) throw std::logic_error("relation witness does not hold");
    out.push_back({Term::iri(subject), Term::iri(rdf::geo(geom::predicate_name(p))), Term::iri(it->second)});
  }
  return ds;
}

const BenchmarkDataset& benchmark_dataset() {
  static const BenchmarkDataset ds = build_dataset();
  return ds;
}

Format format_from_name(std::string_view name) {
  if (name == "ttl" || name == "turtle") return Format::Turtle;
  if (name == "rdfxml" || name == "rdf" || name == "xml") return Format::RdfXml;
  throw std::invalid_argument("unknown RDF format '" + std::string(name) + "'");
}

std::string emit(const std::vector<rdf::Triple>& triples, Format format) {
  return format == Format::Turtle ? rdf::write_turtle(triples) : rdf::write_rdfxml(triples);
}

std::pair<std::string, std::string> relation_witness(geometry::Predicate p) {
  using P = geometry::Predicate;
  switch (p) {
    case P::sfEquals:
    case P::ehEquals:
    case P::rcc8eq: return {"J", "K"};
    case P::sfDisjoint:
    case P::ehDisjoint:
    case P::rcc8dc: return {"B", "C"};
    case P::sfIntersects: return {"A", "B"};
    case P::sfTouches:
    case P::ehMeet:
    case P::rcc8ec: return {"A", "C"};
    case P::sfCrosses: return {"E", "B"};
    case P::sfWithin:
    case P::ehInside:
    case P::rcc8ntpp: return {"B", "A"};
    case P::sfContains:
    case P::ehContains:
    case P::rcc8ntppi: return {"A", "B"};
    case P::sfOverlaps:
    case P::ehOverlap:
    case P::rcc8po: return {"B", "G"};
    case P::ehCovers:
    case P::rcc8tppi: return {"A", "G"};
    case P::ehCoveredBy:
    case P::rcc8tpp: return {"G", "A"};
  }
  throw std::invalid_argument("unknown predicate");
}

std::vector<std::pair<std::string, std::string>> relation_pairs(const BenchmarkDataset& ds, geometry::Predicate p) {
  std::vector<std::pair<std::string, const Geometry*>> nodes;
  for (const auto& g : ds.geometries) {
    if (g.shape.is_empty()) continue;
    nodes.emplace_back(g.iri, &g.shape);
    if (g.exact) nodes.emplace_back(g.feature_iri, &g.shape);  // the exact geometry is the default one
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [s, gs] : nodes)
    for (const auto& [o, go] : nodes)
      if (geom::topological_predicate(p, *gs, *go)) out.emplace_back(s, o);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gsb::dataset
