#pragma once

#ifndef BOOST_ALLOW_DEPRECATED_HEADERS
#define BOOST_ALLOW_DEPRECATED_HEADERS
#endif
#include <boost/geometry.hpp>
#include <variant>

#include "gsb/geometry/geometry.hpp"

namespace gsb::geometry::detail {

namespace bg = boost::geometry;

using BPoint = bg::model::d2::point_xy<double>;
using BLine = bg::model::linestring<BPoint>;
using BPolygon = bg::model::polygon<BPoint>;  // clockwise, closed
using BMultiPoint = bg::model::multi_point<BPoint>;
using BMultiLine = bg::model::multi_linestring<BLine>;
using BMultiPolygon = bg::model::multi_polygon<BPolygon>;

using BGeometry = std::variant<BPoint, BLine, BPolygon, BMultiPoint>;

inline BPoint to_boost(Coord c) { return {c.x, c.y}; }
inline Coord from_boost(const BPoint& p) { return {p.x(), p.y()}; }

inline BGeometry to_boost(const Geometry& g) {
  if (g.is_empty()) throw GeometryError("operation is undefined for an empty geometry");
  if (!g.crs().is_wgs84()) throw UnsupportedGeometry("unsupported CRS <" + g.crs().uri + ">");
  switch (g.kind()) {
    case GeometryKind::Point: return to_boost(g.point_coord());
    case GeometryKind::LineString: {
      BLine line;
      for (const auto& c : g.parts()[0]) line.push_back(to_boost(c));
      return line;
    }
    case GeometryKind::Polygon: {
      BPolygon poly;
      for (const auto& c : g.parts()[0]) poly.outer().push_back(to_boost(c));
      for (std::size_t i = 1; i < g.parts().size(); ++i) {
        poly.inners().emplace_back();
        for (const auto& c : g.parts()[i]) poly.inners().back().push_back(to_boost(c));
      }
      bg::correct(poly);
      return poly;
    }
    case GeometryKind::MultiPoint: {
      BMultiPoint mp;
      for (const auto& c : g.parts()[0]) mp.push_back(to_boost(c));
      return mp;
    }
    case GeometryKind::Unspecified: break;
  }
  throw GeometryError("geometry has no kind");
}

}  // namespace gsb::geometry::detail
