#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "gsb/geometry/geometry.hpp"

namespace gsb::geometry {

inline constexpr std::string_view kUomDegree = "http://www.opengis.net/def/uom/OGC/1.0/degree";
inline constexpr std::string_view kUomMetre = "http://www.opengis.net/def/uom/OGC/1.0/metre";

// Planar conversion used for metre arguments and results.
inline constexpr double kMetresPerDegree = 111320.0;

// Vertices per quarter circle when approximating buffers.
inline constexpr int kBufferSegmentsPerQuadrant = 32;

enum class DistanceUnit { Degree, Metre };

// Throws GeometryError for an IRI that is not a supported unit of measure.
DistanceUnit unit_from_iri(std::string_view iri);

// All functions below compute in the CRS84 plane and return CRS84 geometries.
double distance(const Geometry& a, const Geometry& b, DistanceUnit unit);
Geometry buffer(const Geometry& g, double radius, DistanceUnit unit);
Geometry convex_hull(const Geometry& g);
Geometry intersection(const Geometry& a, const Geometry& b);
Geometry geometry_union(const Geometry& a, const Geometry& b);
Geometry difference(const Geometry& a, const Geometry& b);
Geometry sym_difference(const Geometry& a, const Geometry& b);
Geometry envelope(const Geometry& g);
Geometry boundary(const Geometry& g);
std::string get_srid(const Geometry& g);

// Arguments and results of the GeoSPARQL non-topological functions addressed by
// local name ("distance", "buffer", ..., "getSRID"). Strings are IRIs.
using FunctionValue = std::variant<Geometry, double, std::string>;

FunctionValue nontopological_function(std::string_view name, std::span<const FunctionValue> args);

// dimension, coordinateDimension, spatialDimension -> int; isEmpty, isSimple -> bool.
using PropertyValue = std::variant<int, bool>;
PropertyValue geometry_property(std::string_view name, const Geometry& g);

bool is_simple(const Geometry& g);

// Equality used when comparing answers: both empty (any kind) is equal;
// otherwise canonical coordinates agree within `tolerance` degrees, or the
// geometries are topologically equal.
bool geometry_equals(const Geometry& a, const Geometry& b, double tolerance);

// Drops repeated and collinear vertices, orients exterior rings
// counter-clockwise (holes clockwise), starts rings at their smallest vertex
// and gives open lines a fixed direction. Used for comparison and emission.
Geometry canonical_form(const Geometry& g);

}  // namespace gsb::geometry
