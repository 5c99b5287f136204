#pragma once

#include <string>

#include "gsb/geometry/geometry.hpp"

namespace gsb::geometry::detail {

std::string to_wkt(const Geometry& g, bool include_crs);
std::string to_gml(const Geometry& g, bool include_crs);

// Converts between internal lon/lat storage and the CRS's axis order.
inline Coord to_axis_order(Coord c, const CrsRef& crs) {
  return crs.axis_order == AxisOrder::LatLon ? Coord{c.y, c.x} : c;
}

}  // namespace gsb::geometry::detail
