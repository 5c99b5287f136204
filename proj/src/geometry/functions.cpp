#include "gsb/geometry/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "boost_adapt.hpp"
#include "gsb/geometry/topology.hpp"

namespace gsb::geometry {

namespace {

using detail::BGeometry;
using detail::BLine;
using detail::BMultiLine;
using detail::BMultiPolygon;
using detail::BPoint;
using detail::BPolygon;
namespace bg = detail::bg;

double cross(Coord o, Coord a, Coord b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool nearly_collinear(Coord a, Coord b, Coord c) {
  const double scale = std::hypot(b.x - a.x, b.y - a.y) * std::hypot(c.x - b.x, c.y - b.y);
  return std::abs(cross(a, b, c)) <= 1e-12 * scale;
}

// b lies between a and c on a straight run (not a spike).
bool redundant_vertex(Coord a, Coord b, Coord c) {
  if (!nearly_collinear(a, b, c)) return false;
  return (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y) > 0;
}

std::vector<Coord> without_repeats(const std::vector<Coord>& pts) {
  std::vector<Coord> out;
  for (const auto& p : pts)
    if (out.empty() || out.back() != p) out.push_back(p);
  return out;
}

double signed_area(const Ring& ring) {
  double area = 0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i)
    area += ring[i].x * ring[i + 1].y - ring[i + 1].x * ring[i].y;
  return area / 2;
}

Ring canonical_ring(const Ring& ring, bool counter_clockwise) {
  std::vector<Coord> pts = without_repeats(ring);
  if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  bool changed = true;
  while (changed && pts.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size() && pts.size() > 3; ++i) {
      const auto& prev = pts[(i + pts.size() - 1) % pts.size()];
      const auto& next = pts[(i + 1) % pts.size()];
      if (redundant_vertex(prev, pts[i], next)) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  Ring closed = pts;
  closed.push_back(pts.front());
  if ((signed_area(closed) > 0) != counter_clockwise) std::reverse(pts.begin(), pts.end());
  std::rotate(pts.begin(), std::min_element(pts.begin(), pts.end()), pts.end());
  pts.push_back(pts.front());
  return pts;
}

std::vector<Coord> canonical_open_line(const std::vector<Coord>& line) {
  std::vector<Coord> pts = without_repeats(line);
  std::vector<Coord> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && i + 1 < pts.size() && redundant_vertex(out.back(), pts[i], pts[i + 1])) continue;
    out.push_back(pts[i]);
  }
  if (out.size() >= 2 && out.back() < out.front()) std::reverse(out.begin(), out.end());
  return out;
}

Geometry from_polygon(const BPolygon& poly) {
  std::vector<Ring> rings;
  auto convert = [](const auto& boost_ring) {
    Ring ring;
    for (const auto& p : boost_ring) ring.push_back(detail::from_boost(p));
    return ring;
  };
  rings.push_back(convert(poly.outer()));
  for (const auto& inner : poly.inners()) rings.push_back(convert(inner));
  return canonical_form(Geometry::polygon(std::move(rings)));
}

Geometry from_multi_polygon(const BMultiPolygon& mp) {
  if (mp.empty()) return Geometry::empty(GeometryKind::Polygon);
  if (mp.size() > 1) throw UnsupportedGeometry("result is a MultiPolygon");
  return from_polygon(mp.front());
}

Geometry from_multi_line(const BMultiLine& ml) {
  if (ml.empty()) return Geometry::empty(GeometryKind::LineString);
  if (ml.size() > 1) throw UnsupportedGeometry("result is a MultiLineString");
  std::vector<Coord> coords;
  for (const auto& p : ml.front()) coords.push_back(detail::from_boost(p));
  return canonical_form(Geometry::line_string(std::move(coords)));
}

bool intersects(const Geometry& a, const Geometry& b) {
  return topological_predicate(Predicate::sfIntersects, a, b);
}

Geometry as_crs84(const Geometry& g) { return g.with_crs(CrsRef::crs84()); }

enum class SetOp { Intersection, Union, Difference, SymDifference };

Geometry polygon_set_op(SetOp op, const BPolygon& a, const BPolygon& b) {
  BMultiPolygon out;
  switch (op) {
    case SetOp::Intersection: bg::intersection(a, b, out); break;
    case SetOp::Union: bg::union_(a, b, out); break;
    case SetOp::Difference: bg::difference(a, b, out); break;
    case SetOp::SymDifference: bg::sym_difference(a, b, out); break;
  }
  return from_multi_polygon(out);
}

Geometry set_op(SetOp op, const Geometry& a, const Geometry& b) {
  const BGeometry ba = detail::to_boost(a);
  const BGeometry bb = detail::to_boost(b);
  const auto ka = a.kind();
  const auto kb = b.kind();
  if (ka == GeometryKind::Polygon && kb == GeometryKind::Polygon)
    return polygon_set_op(op, std::get<BPolygon>(ba), std::get<BPolygon>(bb));

  if (ka == GeometryKind::Point || kb == GeometryKind::Point) {
    const bool a_is_point = ka == GeometryKind::Point;
    const Geometry& point = a_is_point ? a : b;
    const Geometry& other = a_is_point ? b : a;
    const bool touching = intersects(point, other);
    switch (op) {
      case SetOp::Intersection:
        return touching ? as_crs84(point) : Geometry::empty(GeometryKind::Point);
      case SetOp::Difference:
        if (!a_is_point) return canonical_form(as_crs84(a));  // removing a point leaves the rest
        return touching ? Geometry::empty(GeometryKind::Point) : as_crs84(a);
      case SetOp::Union:
        if (touching) return canonical_form(as_crs84(other));
        break;
      case SetOp::SymDifference:
        if (touching && other.kind() == GeometryKind::Point) return Geometry::empty(GeometryKind::Point);
        if (touching && other.dimension() > 0) return canonical_form(as_crs84(other));
        break;
    }
    throw UnsupportedGeometry("set operation result is a multi-part geometry");
  }

  if (ka == GeometryKind::LineString && kb == GeometryKind::Polygon &&
      (op == SetOp::Intersection || op == SetOp::Difference)) {
    BMultiLine out;
    if (op == SetOp::Intersection) bg::intersection(std::get<BLine>(ba), std::get<BPolygon>(bb), out);
    else bg::difference(std::get<BLine>(ba), std::get<BPolygon>(bb), out);
    return from_multi_line(out);
  }
  if (ka == GeometryKind::Polygon && kb == GeometryKind::LineString && op == SetOp::Intersection)
    return set_op(op, b, a);
  if (ka == GeometryKind::Polygon && kb == GeometryKind::LineString && op == SetOp::Difference)
    return canonical_form(as_crs84(a));
  throw UnsupportedGeometry("set operation not supported for " + std::string(kind_name(ka)) + " and " +
                            std::string(kind_name(kb)));
}

// Counter-clockwise hull without collinear vertices. Degenerates to a Point
// or a two-point LineString.
Geometry hull_of(std::vector<Coord> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return Geometry::empty(GeometryKind::Polygon);
  if (pts.size() == 1) return Geometry::point(pts[0]);
  std::vector<Coord> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k);  // closed: last == first
  if (hull.size() < 4) return Geometry::line_string({pts.front(), pts.back()});
  return Geometry::polygon({hull});
}

std::vector<Coord> all_coords(const Geometry& g) {
  std::vector<Coord> out;
  for (const auto& part : g.parts()) out.insert(out.end(), part.begin(), part.end());
  return out;
}

bool is_convex_shape(const Geometry& g) {
  switch (g.kind()) {
    case GeometryKind::Point: return true;
    case GeometryKind::LineString: return canonical_open_line(g.parts()[0]).size() == 2;
    case GeometryKind::Polygon: {
      if (g.parts().size() != 1) return false;
      const Ring ring = canonical_ring(g.parts()[0], true);
      for (std::size_t i = 0; i + 2 < ring.size() + 1; ++i) {
        const auto n = ring.size() - 1;
        if (cross(ring[i % n], ring[(i + 1) % n], ring[(i + 2) % n]) < 0) return false;
      }
      return true;
    }
    default: return false;
  }
}

struct CanonicalParts {
  int family = -1;  // 0 points, 1 lines, 2 surfaces
  std::vector<std::vector<Coord>> parts;
};

CanonicalParts canonical_parts(const Geometry& g) {
  const Geometry c = canonical_form(g);
  CanonicalParts out{g.dimension(), c.parts()};
  if (c.kind() == GeometryKind::MultiPoint || c.kind() == GeometryKind::Point) out.family = 0;
  return out;
}

bool coords_close(const std::vector<std::vector<Coord>>& a, const std::vector<std::vector<Coord>>& b,
                  double tolerance) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (std::abs(a[i][j].x - b[i][j].x) > tolerance || std::abs(a[i][j].y - b[i][j].y) > tolerance)
        return false;
  }
  return true;
}

}  // namespace

DistanceUnit unit_from_iri(std::string_view iri) {
  if (iri == kUomDegree) return DistanceUnit::Degree;
  if (iri == kUomMetre || iri == "http://www.opengis.net/def/uom/OGC/1.0/meter") return DistanceUnit::Metre;
  throw GeometryError("unknown unit of measure <" + std::string(iri) + ">");
}

double distance(const Geometry& a, const Geometry& b, DistanceUnit unit) {
  const auto ba = detail::to_boost(a);
  const auto bb = detail::to_boost(b);
  const double degrees =
      std::visit([](const auto& x, const auto& y) -> double { return bg::distance(x, y); }, ba, bb);
  return unit == DistanceUnit::Degree ? degrees : degrees * kMetresPerDegree;
}

Geometry buffer(const Geometry& g, double radius, DistanceUnit unit) {
  detail::to_boost(g);  // rejects empty input and foreign CRSs
  if (!(radius > 0)) throw GeometryError("buffer radius must be positive");
  if (!is_convex_shape(g)) throw UnsupportedGeometry("buffer is only supported for convex geometries");
  const double r = unit == DistanceUnit::Degree ? radius : radius / kMetresPerDegree;
  const int steps = 4 * kBufferSegmentsPerQuadrant;
  std::vector<Coord> pts;
  for (const auto& c : all_coords(g))
    for (int k = 0; k < steps; ++k) {
      const double angle = 2 * std::numbers::pi * k / steps;
      pts.push_back({c.x + r * std::cos(angle), c.y + r * std::sin(angle)});
    }
  return canonical_form(hull_of(std::move(pts)));
}

Geometry convex_hull(const Geometry& g) {
  detail::to_boost(g);
  return canonical_form(hull_of(all_coords(g)));
}

Geometry intersection(const Geometry& a, const Geometry& b) { return set_op(SetOp::Intersection, a, b); }
Geometry geometry_union(const Geometry& a, const Geometry& b) { return set_op(SetOp::Union, a, b); }
Geometry difference(const Geometry& a, const Geometry& b) { return set_op(SetOp::Difference, a, b); }
Geometry sym_difference(const Geometry& a, const Geometry& b) { return set_op(SetOp::SymDifference, a, b); }

Geometry envelope(const Geometry& g) {
  detail::to_boost(g);
  const auto pts = all_coords(g);
  auto [min_x, max_x] = std::minmax_element(pts.begin(), pts.end(), [](Coord p, Coord q) { return p.x < q.x; });
  auto [min_y, max_y] = std::minmax_element(pts.begin(), pts.end(), [](Coord p, Coord q) { return p.y < q.y; });
  const double x0 = min_x->x, x1 = max_x->x, y0 = min_y->y, y1 = max_y->y;
  if (x0 == x1 && y0 == y1) return Geometry::point({x0, y0});
  if (x0 == x1 || y0 == y1) return Geometry::line_string({{x0, y0}, {x1, y1}});
  return Geometry::polygon({{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}});
}

Geometry boundary(const Geometry& g) {
  detail::to_boost(g);
  switch (g.kind()) {
    case GeometryKind::Point:
    case GeometryKind::MultiPoint: return Geometry::empty(GeometryKind::MultiPoint);
    case GeometryKind::LineString: {
      const auto& line = g.parts()[0];
      if (line.front() == line.back()) return Geometry::empty(GeometryKind::MultiPoint);
      return Geometry::multi_point({line.front(), line.back()});
    }
    case GeometryKind::Polygon:
      if (g.parts().size() > 1) throw UnsupportedGeometry("boundary of a polygon with holes is a MultiLineString");
      return Geometry::line_string(g.parts()[0]);
    case GeometryKind::Unspecified: break;
  }
  throw GeometryError("geometry has no kind");
}

std::string get_srid(const Geometry& g) { return g.crs().uri; }

FunctionValue nontopological_function(std::string_view name, std::span<const FunctionValue> args) {
  auto geometry_arg = [&](std::size_t i) -> const Geometry& {
    if (i >= args.size() || !std::holds_alternative<Geometry>(args[i]))
      throw GeometryError(std::string(name) + ": argument " + std::to_string(i + 1) + " must be a geometry");
    return std::get<Geometry>(args[i]);
  };
  auto number_arg = [&](std::size_t i) {
    if (i >= args.size() || !std::holds_alternative<double>(args[i]))
      throw GeometryError(std::string(name) + ": argument " + std::to_string(i + 1) + " must be a number");
    return std::get<double>(args[i]);
  };
  auto unit_arg = [&](std::size_t i) {
    if (i >= args.size() || !std::holds_alternative<std::string>(args[i]))
      throw GeometryError(std::string(name) + ": argument " + std::to_string(i + 1) + " must be a unit IRI");
    return unit_from_iri(std::get<std::string>(args[i]));
  };
  auto arity = [&](std::size_t n) {
    if (args.size() != n)
      throw GeometryError(std::string(name) + " expects " + std::to_string(n) + " arguments");
  };

  if (name == "distance") {
    arity(3);
    return distance(geometry_arg(0), geometry_arg(1), unit_arg(2));
  }
  if (name == "buffer") {
    arity(3);
    return buffer(geometry_arg(0), number_arg(1), unit_arg(2));
  }
  if (name == "convexHull") {
    arity(1);
    return convex_hull(geometry_arg(0));
  }
  if (name == "envelope") {
    arity(1);
    return envelope(geometry_arg(0));
  }
  if (name == "boundary") {
    arity(1);
    return boundary(geometry_arg(0));
  }
  if (name == "getSRID") {
    arity(1);
    return get_srid(geometry_arg(0));
  }
  if (name == "intersection" || name == "union" || name == "difference" || name == "symDifference") {
    arity(2);
    const auto& a = geometry_arg(0);
    const auto& b = geometry_arg(1);
    if (name == "intersection") return intersection(a, b);
    if (name == "union") return geometry_union(a, b);
    if (name == "difference") return difference(a, b);
    return sym_difference(a, b);
  }
  throw GeometryError("unknown function '" + std::string(name) + "'");
}

bool is_simple(const Geometry& g) {
  if (g.is_empty()) return true;
  switch (g.kind()) {
    case GeometryKind::Point: return true;
    case GeometryKind::MultiPoint: {
      auto pts = g.parts()[0];
      std::sort(pts.begin(), pts.end());
      return std::adjacent_find(pts.begin(), pts.end()) == pts.end();
    }
    case GeometryKind::LineString: return bg::is_simple(std::get<BLine>(detail::to_boost(g)));
    case GeometryKind::Polygon: return bg::is_valid(std::get<BPolygon>(detail::to_boost(g)));
    case GeometryKind::Unspecified: break;
  }
  return true;
}

PropertyValue geometry_property(std::string_view name, const Geometry& g) {
  if (name == "dimension") return std::max(g.dimension(), 0);
  if (name == "coordinateDimension" || name == "spatialDimension") return 2;
  if (name == "isEmpty") return g.is_empty();
  if (name == "isSimple") return is_simple(g);
  throw GeometryError("unknown geometry property '" + std::string(name) + "'");
}

Geometry canonical_form(const Geometry& g) {
  if (g.is_empty()) return g;
  switch (g.kind()) {
    case GeometryKind::Point: return g;
    case GeometryKind::MultiPoint: {
      auto pts = g.parts()[0];
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      return Geometry::multi_point(std::move(pts), g.crs());
    }
    case GeometryKind::LineString: {
      const auto& line = g.parts()[0];
      auto open = canonical_open_line(line);
      if (line.front() == line.back() && without_repeats(line).size() >= 4)
        return Geometry::line_string(canonical_ring(line, true), g.crs());
      if (open.size() < 2) return Geometry::point(open.front(), g.crs());
      return Geometry::line_string(std::move(open), g.crs());
    }
    case GeometryKind::Polygon: {
      std::vector<Ring> rings;
      for (std::size_t i = 0; i < g.parts().size(); ++i) rings.push_back(canonical_ring(g.parts()[i], i == 0));
      std::sort(rings.begin() + 1, rings.end());
      return Geometry::polygon(std::move(rings), g.crs());
    }
    case GeometryKind::Unspecified: break;
  }
  return g;
}

bool geometry_equals(const Geometry& a, const Geometry& b, double tolerance) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
  const bool same_plane = a.crs().is_wgs84() && b.crs().is_wgs84();
  if (!same_plane && a.crs().uri != b.crs().uri) return false;
  const auto ca = canonical_parts(a);
  const auto cb = canonical_parts(b);
  if (ca.family == cb.family && coords_close(ca.parts, cb.parts, tolerance)) return true;
  if (!same_plane) return false;
  try {
    return topological_predicate(Predicate::sfEquals, a, b);
  } catch (const GeometryError&) {
    return false;
  }
}

}  // namespace gsb::geometry
