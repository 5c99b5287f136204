#include "gsb/geometry/geometry.hpp"

#include <charconv>
#include <cmath>

#include "serialization_detail.hpp"

namespace gsb::geometry {

namespace {

void require_finite(const std::vector<Coord>& coords) {
  for (const auto& c : coords)
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) throw GeometryError("non-finite coordinate");
}

}  // namespace

CrsRef CrsRef::from_uri(std::string uri) {
  const AxisOrder order = uri == kEpsg4326Uri ? AxisOrder::LatLon : AxisOrder::LonLat;
  return {std::move(uri), order};
}

bool CrsRef::is_wgs84() const { return uri == kCrs84Uri || uri == kEpsg4326Uri; }

std::string_view kind_name(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::Point: return "Point";
    case GeometryKind::LineString: return "LineString";
    case GeometryKind::Polygon: return "Polygon";
    case GeometryKind::MultiPoint: return "MultiPoint";
    case GeometryKind::Unspecified: break;
  }
  return "Geometry";
}

Geometry Geometry::empty(GeometryKind kind, CrsRef crs) {
  Geometry g;
  g.kind_ = kind;
  g.crs_ = std::move(crs);
  return g;
}

Geometry Geometry::point(Coord c, CrsRef crs) {
  Geometry g = empty(GeometryKind::Point, std::move(crs));
  g.parts_ = {{c}};
  require_finite(g.parts_[0]);
  return g;
}

Geometry Geometry::line_string(std::vector<Coord> coords, CrsRef crs) {
  Geometry g = empty(GeometryKind::LineString, std::move(crs));
  if (coords.empty()) return g;
  if (coords.size() < 2) throw GeometryError("a LineString needs at least 2 coordinates");
  require_finite(coords);
  g.parts_.push_back(std::move(coords));
  return g;
}

Geometry Geometry::polygon(std::vector<Ring> rings, CrsRef crs) {
  Geometry g = empty(GeometryKind::Polygon, std::move(crs));
  for (const auto& ring : rings) {
    if (ring.size() < 4) throw GeometryError("a polygon ring needs at least 4 coordinates");
    if (ring.front() != ring.back()) throw GeometryError("polygon ring is not closed");
    require_finite(ring);
  }
  g.parts_ = std::move(rings);
  return g;
}

Geometry Geometry::multi_point(std::vector<Coord> coords, CrsRef crs) {
  Geometry g = empty(GeometryKind::MultiPoint, std::move(crs));
  if (coords.empty()) return g;
  require_finite(coords);
  g.parts_.push_back(std::move(coords));
  return g;
}

const Coord& Geometry::point_coord() const {
  if (kind_ != GeometryKind::Point || is_empty()) throw GeometryError("not a non-empty Point");
  return parts_[0][0];
}

int Geometry::dimension() const {
  switch (kind_) {
    case GeometryKind::Point:
    case GeometryKind::MultiPoint: return 0;
    case GeometryKind::LineString: return 1;
    case GeometryKind::Polygon: return 2;
    case GeometryKind::Unspecified: break;
  }
  return -1;
}

Geometry Geometry::with_crs(CrsRef crs) const {
  Geometry g = *this;
  g.crs_ = std::move(crs);
  return g;
}

GeometryLiteral parse_literal(std::string_view text, Serialization serialization) {
  return serialization == Serialization::WKT ? parse_wkt(text) : parse_gml(text);
}

std::string format_number(double value) {
  if (value == 0) return "0";  // also folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string serialize(const Geometry& g, Serialization serialization, bool include_crs) {
  return serialization == Serialization::WKT ? detail::to_wkt(g, include_crs)
                                             : detail::to_gml(g, include_crs);
}

}  // namespace gsb::geometry
