#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsb::geometry {

inline constexpr std::string_view kCrs84Uri = "http://www.opengis.net/def/crs/OGC/1.3/CRS84";
inline constexpr std::string_view kEpsg4326Uri = "http://www.opengis.net/def/crs/EPSG/0/4326";
inline constexpr std::string_view kGmlNamespace = "http://www.opengis.net/gml/3.2";

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public GeometryError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : GeometryError(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Raised for operations outside the supported geometry combinations.
class UnsupportedGeometry : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

enum class AxisOrder { LonLat, LatLon };

struct CrsRef {
  std::string uri{kCrs84Uri};
  AxisOrder axis_order = AxisOrder::LonLat;

  static CrsRef crs84() { return {}; }
  // EPSG:4326 is latitude-first; every other IRI is taken as longitude-first.
  static CrsRef from_uri(std::string uri);
  // True for the two WGS84 reference systems the planar algorithms accept.
  bool is_wgs84() const;

  friend bool operator==(const CrsRef&, const CrsRef&) = default;
};

// Always longitude (x), latitude (y), whatever the source literal's axis order.
struct Coord {
  double x = 0;
  double y = 0;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

using Ring = std::vector<Coord>;

enum class GeometryKind { Unspecified, Point, LineString, Polygon, MultiPoint };

std::string_view kind_name(GeometryKind kind);

class Geometry {
 public:
  // Empty geometry of unspecified kind in CRS84.
  Geometry() = default;

  static Geometry empty(GeometryKind kind = GeometryKind::Unspecified, CrsRef crs = {});
  static Geometry point(Coord c, CrsRef crs = {});
  static Geometry line_string(std::vector<Coord> coords, CrsRef crs = {});
  static Geometry polygon(std::vector<Ring> rings, CrsRef crs = {});
  static Geometry multi_point(std::vector<Coord> coords, CrsRef crs = {});

  GeometryKind kind() const { return kind_; }
  bool is_empty() const { return parts_.empty(); }
  const CrsRef& crs() const { return crs_; }

  // Point: one part holding one coordinate. LineString: one part. Polygon: the
  // exterior ring followed by interior rings. MultiPoint: one part of members.
  const std::vector<std::vector<Coord>>& parts() const { return parts_; }
  const Coord& point_coord() const;

  // 0 for points, 1 for curves, 2 for surfaces; -1 for an empty unspecified geometry.
  int dimension() const;

  Geometry with_crs(CrsRef crs) const;

  friend bool operator==(const Geometry&, const Geometry&) = default;

 private:
  GeometryKind kind_ = GeometryKind::Unspecified;
  std::vector<std::vector<Coord>> parts_;
  CrsRef crs_;
};

enum class Serialization { WKT, GML };

struct GeometryLiteral {
  Serialization serialization = Serialization::WKT;
  std::string raw;
  Geometry parsed;
};

// Optional "<crs-iri>" prefix followed by Simple Features WKT. Empty or blank
// text is an empty geometry of unspecified kind.
GeometryLiteral parse_wkt(std::string_view text);

// GML 3.2 Point, LineString, LinearRing, Polygon or MultiPoint. Element names
// are matched by local name so un-namespaced fragments are accepted too.
GeometryLiteral parse_gml(std::string_view text);

GeometryLiteral parse_literal(std::string_view text, Serialization serialization);

// Canonical text. WKT: "Kind(x y, x y)" with single spaces and an explicit CRS
// IRI when include_crs. GML: gml:-prefixed GML 3.2 with srsName when include_crs.
// An empty geometry of unspecified kind serializes to the empty string.
std::string serialize(const Geometry& g, Serialization serialization, bool include_crs);

// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace gsb::geometry
