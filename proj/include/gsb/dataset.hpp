#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsb/geometry/geometry.hpp"
#include "gsb/geometry/topology.hpp"
#include "gsb/rdf.hpp"

namespace gsb::dataset {

struct GeometryRecord {
  std::string name;         // feature letter, "A" .. "M"
  std::string feature_iri;  // my:A
  std::string iri;          // my:AExactGeom or my:APointGeom
  bool exact = true;        // false for the center-point geometries
  geometry::GeometryKind kind = geometry::GeometryKind::Unspecified;  // declared kind
  std::string wkt;
  std::string gml;
  geometry::Geometry shape;  // parsed from the WKT literal
};

struct BenchmarkDataset {
  std::vector<rdf::Triple> data_triples;
  std::vector<rdf::Triple> schema_triples;
  std::vector<GeometryRecord> geometries;
  std::vector<std::string> features;  // feature IRIs in letter order

  std::vector<rdf::Triple> all_triples() const;
  // Throws std::out_of_range for an unknown IRI or letter.
  const GeometryRecord& geometry(std::string_view iri) const;
  const GeometryRecord& exact(std::string_view name) const;
  const GeometryRecord& point(std::string_view name) const;
};

BenchmarkDataset build_dataset();
// Built once and shared.
const BenchmarkDataset& benchmark_dataset();

enum class Format { Turtle, RdfXml };
// "ttl"/"turtle" or "rdfxml"/"rdf"/"xml"; throws std::invalid_argument otherwise.
Format format_from_name(std::string_view name);
std::string emit(const std::vector<rdf::Triple>& triples, Format format);

// The pair of feature letters each topological relation is exercised on.
std::pair<std::string, std::string> relation_witness(geometry::Predicate p);

// Every (subject, object) pair the relation holds for when features and
// geometries are related through their literals: geometries by their WKT,
// features by their default geometry. Empty geometries take part in no pair.
// Sorted by subject then object.
std::vector<std::pair<std::string, std::string>> relation_pairs(const BenchmarkDataset& ds, geometry::Predicate p);

}  // namespace gsb::dataset
