#pragma once

// Shared test helpers: seeded generators, an independent point-sampling
// DE-9IM classifier and a live fixture endpoint.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gsb/client.hpp"
#include "gsb/fixture.hpp"
#include "gsb/geometry/geometry.hpp"
#include "gsb/geometry/topology.hpp"
#include "gsb/rdf.hpp"
#include "gsb/results.hpp"

namespace gsb::testing_support {

using geometry::Coord;
using geometry::Geometry;
using geometry::GeometryKind;
using geometry::Location;

// ---------------------------------------------------------------- generators

inline double random_coordinate(std::mt19937& rng) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return std::uniform_int_distribution<int>(-180, 180)(rng);
    case 1: return std::uniform_int_distribution<int>(-1440, 1440)(rng) / 8.0;
    default: return std::uniform_real_distribution<double>(-180, 180)(rng);
  }
}

inline geometry::CrsRef random_crs(std::mt19937& rng) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return geometry::CrsRef::crs84();
    case 1: return geometry::CrsRef::from_uri(std::string(geometry::kEpsg4326Uri));
    default: return geometry::CrsRef::from_uri("http://www.opengis.net/def/crs/EPSG/0/3857");
  }
}

// Small geometries of every supported kind, including empties. Polygons are
// rectangles, optionally with a rectangular hole, so they are always valid.
inline Geometry random_geometry(std::mt19937& rng) {
  const auto crs = random_crs(rng);
  auto coord = [&] { return Coord{random_coordinate(rng), random_coordinate(rng)}; };
  const int kind = std::uniform_int_distribution<int>(0, 9)(rng);
  if (kind == 0) {
    const GeometryKind kinds[] = {GeometryKind::Point, GeometryKind::LineString, GeometryKind::Polygon,
                                  GeometryKind::MultiPoint};
    return Geometry::empty(kinds[std::uniform_int_distribution<int>(0, 3)(rng)], crs);
  }
  if (kind <= 3) return Geometry::point(coord(), crs);
  if (kind <= 5) {
    std::vector<Coord> line(std::uniform_int_distribution<int>(2, 6)(rng));
    for (auto& c : line) c = coord();
    return Geometry::line_string(line, crs);
  }
  if (kind <= 8) {
    const double x = random_coordinate(rng), y = random_coordinate(rng);
    const double w = std::uniform_int_distribution<int>(4, 40)(rng), h = std::uniform_int_distribution<int>(4, 40)(rng);
    std::vector<geometry::Ring> rings{{{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}, {x, y}}};
    if (std::uniform_int_distribution<int>(0, 1)(rng)) {
      rings.push_back({{x + 1, y + 1}, {x + 1, y + h - 1}, {x + w - 1, y + h - 1}, {x + w - 1, y + 1}, {x + 1, y + 1}});
    }
    return Geometry::polygon(rings, crs);
  }
  std::vector<Coord> points(std::uniform_int_distribution<int>(1, 5)(rng));
  for (auto& c : points) c = coord();
  return Geometry::multi_point(points, crs);
}

// Planar geometries on a coarse integer grid, for relate checks where
// coincident vertices and shared edges are common.
inline Geometry random_grid_geometry(std::mt19937& rng) {
  auto v = [&] { return static_cast<double>(std::uniform_int_distribution<int>(0, 8)(rng)); };
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return Geometry::point({v(), v()});
    case 1: {
      Coord a{v(), v()}, b{v(), v()};
      while (a == b) b = {v(), v()};
      return Geometry::line_string({a, b});
    }
    case 2: {
      std::vector<Coord> pts{{v(), v()}, {v(), v()}};
      return Geometry::multi_point(pts);
    }
    default: {
      double x0 = v(), x1 = v(), y0 = v(), y1 = v();
      while (x0 == x1) x1 = v();
      while (y0 == y1) y1 = v();
      if (x0 > x1) std::swap(x0, x1);
      if (y0 > y1) std::swap(y0, y1);
      return Geometry::polygon({{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}}});
    }
  }
}

inline rdf::Term random_term(std::mt19937& rng) {
  static const std::vector<std::string> texts = {
      "plain", "", "with space", "quote \" and 'apostrophe'", "a < b & c > d", "line\nbreak\ttab",
      "Zürich", "日本語", "back\\slash", "]]>",
  };
  auto pick = [&](const auto& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
  const int n = std::uniform_int_distribution<int>(0, 999)(rng);
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0: return rdf::Term::iri("http://example.org/r" + std::to_string(n) + "?q=a&b=" + std::to_string(n % 7));
    case 1: return rdf::Term::blank("b" + std::to_string(n));
    case 2: return rdf::Term::literal(pick(texts));
    case 3: return rdf::Term::lang_literal(pick(texts), pick(std::vector<std::string>{"en", "de-CH", "fr"}));
    case 4: return rdf::Term::integer(n - 500);
    default:
      return rdf::Term::literal(
          "<http://www.opengis.net/def/crs/OGC/1.3/CRS84> Point(" + std::to_string(n) + " 1)", rdf::geo("wktLiteral"));
  }
}

inline results::QueryOutcome random_outcome(std::mt19937& rng) {
  if (std::uniform_int_distribution<int>(0, 4)(rng) == 0)
    return results::QueryOutcome::boolean(std::uniform_int_distribution<int>(0, 1)(rng) == 1);
  results::SolutionSequence s;
  const int vars = std::uniform_int_distribution<int>(0, 4)(rng);
  for (int i = 0; i < vars; ++i) s.variables.push_back("v" + std::to_string(i));
  const int rows = std::uniform_int_distribution<int>(0, 6)(rng);
  for (int r = 0; r < rows; ++r) {
    results::Row row;
    for (const auto& v : s.variables)
      if (std::uniform_int_distribution<int>(0, 5)(rng) != 0) row[v] = random_term(rng);
    s.rows.push_back(row);
  }
  return results::QueryOutcome::solutions(s);
}

// ------------------------------------------------ point-sampling DE-9IM oracle

namespace detail {

constexpr double kOnEps = 1e-9;

inline bool same(Coord a, Coord b) { return std::abs(a.x - b.x) <= kOnEps && std::abs(a.y - b.y) <= kOnEps; }

inline bool on_segment(Coord p, Coord a, Coord b) {
  const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  if (std::abs(cross) > kOnEps * std::max(1.0, len)) return false;
  return p.x >= std::min(a.x, b.x) - kOnEps && p.x <= std::max(a.x, b.x) + kOnEps &&
         p.y >= std::min(a.y, b.y) - kOnEps && p.y <= std::max(a.y, b.y) + kOnEps;
}

inline bool inside_ring(Coord p, const std::vector<Coord>& ring) {
  bool in = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const auto& a = ring[i];
    const auto& b = ring[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

inline std::vector<std::pair<Coord, Coord>> segments(const Geometry& g) {
  std::vector<std::pair<Coord, Coord>> out;
  if (g.kind() != GeometryKind::LineString && g.kind() != GeometryKind::Polygon) return out;
  for (const auto& part : g.parts())
    for (std::size_t i = 0; i + 1 < part.size(); ++i) out.emplace_back(part[i], part[i + 1]);
  return out;
}

}  // namespace detail

// Where `p` lies relative to `g`, from first principles.
inline Location locate(const Geometry& g, Coord p) {
  using namespace detail;
  switch (g.kind()) {
    case GeometryKind::Point:
    case GeometryKind::MultiPoint:
      for (const auto& c : g.parts().front())
        if (same(c, p)) return Location::Interior;
      return Location::Exterior;
    case GeometryKind::LineString: {
      const auto& line = g.parts().front();
      const bool closed = same(line.front(), line.back());
      if (!closed && (same(p, line.front()) || same(p, line.back()))) return Location::Boundary;
      for (const auto& [a, b] : segments(g))
        if (on_segment(p, a, b)) return Location::Interior;
      return Location::Exterior;
    }
    case GeometryKind::Polygon: {
      for (const auto& [a, b] : segments(g))
        if (on_segment(p, a, b)) return Location::Boundary;
      const auto& rings = g.parts();
      if (!inside_ring(p, rings.front())) return Location::Exterior;
      for (std::size_t i = 1; i < rings.size(); ++i)
        if (inside_ring(p, rings[i])) return Location::Exterior;
      return Location::Interior;
    }
    default: return Location::Exterior;
  }
}

// Estimates the DE-9IM matrix by classifying sample points against both
// operands: vertices, segment intersections, midpoints of every split segment
// piece, points just off each piece and a grid over the joint extent. Cell
// dimension comes from how far a sample can move while staying in the cell.
inline geometry::De9imMatrix sampled_matrix(const Geometry& a, const Geometry& b) {
  using namespace detail;
  std::vector<Coord> vertices;
  for (const auto* g : {&a, &b})
    for (const auto& part : g->parts()) vertices.insert(vertices.end(), part.begin(), part.end());

  auto sa = segments(a), sb = segments(b);
  std::vector<std::pair<Coord, Coord>> all = sa;
  all.insert(all.end(), sb.begin(), sb.end());

  std::vector<Coord> crossings;
  for (const auto& [p1, p2] : sa)
    for (const auto& [q1, q2] : sb) {
      const double d = (p2.x - p1.x) * (q2.y - q1.y) - (p2.y - p1.y) * (q2.x - q1.x);
      if (std::abs(d) < 1e-15) continue;
      const double t = ((q1.x - p1.x) * (q2.y - q1.y) - (q1.y - p1.y) * (q2.x - q1.x)) / d;
      const Coord c{p1.x + t * (p2.x - p1.x), p1.y + t * (p2.y - p1.y)};
      if (on_segment(c, p1, p2) && on_segment(c, q1, q2)) crossings.push_back(c);
    }

  std::vector<Coord> samples = vertices;
  samples.insert(samples.end(), crossings.begin(), crossings.end());

  double min_x = vertices.front().x, max_x = min_x, min_y = vertices.front().y, max_y = min_y;
  for (const auto& v : vertices) {
    min_x = std::min(min_x, v.x), max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y), max_y = std::max(max_y, v.y);
  }
  const double extent = std::max({max_x - min_x, max_y - min_y, 1.0});
  const double off = extent * 1e-4;
  const double probe = extent * 1e-7;

  std::vector<Coord> directions;
  for (int k = 0; k < 16; ++k) directions.push_back({std::cos(k * M_PI / 8), std::sin(k * M_PI / 8)});
  for (const auto& [p, q] : all) {
    const double len = std::hypot(q.x - p.x, q.y - p.y);
    if (len > 0) directions.push_back({(q.x - p.x) / len, (q.y - p.y) / len});
  }

  for (const auto& [p, q] : all) {
    const double len = std::hypot(q.x - p.x, q.y - p.y);
    if (len == 0) continue;
    std::vector<double> ts{0, 1};
    for (const auto& c : vertices)
      if (on_segment(c, p, q)) ts.push_back(std::hypot(c.x - p.x, c.y - p.y) / len);
    for (const auto& c : crossings)
      if (on_segment(c, p, q)) ts.push_back(std::hypot(c.x - p.x, c.y - p.y) / len);
    std::sort(ts.begin(), ts.end());
    const Coord normal{-(q.y - p.y) / len, (q.x - p.x) / len};
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      const double t = (ts[i] + ts[i + 1]) / 2;
      const Coord m{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
      samples.push_back(m);
      samples.push_back({m.x + off * normal.x, m.y + off * normal.y});
      samples.push_back({m.x - off * normal.x, m.y - off * normal.y});
    }
  }
  for (const auto& v : vertices)
    for (const auto& d : directions) samples.push_back({v.x + off * d.x, v.y + off * d.y});
  constexpr int kGrid = 23;
  for (int i = 0; i <= kGrid; ++i)
    for (int j = 0; j <= kGrid; ++j)
      samples.push_back({min_x - 1 + (max_x - min_x + 2) * (i + 0.37) / kGrid,
                         min_y - 1 + (max_y - min_y + 2) * (j + 0.61) / kGrid});

  geometry::De9imMatrix m;
  for (const auto& s : samples) {
    const auto la = locate(a, s), lb = locate(b, s);
    auto in_cell = [&](Coord c) { return locate(a, c) == la && locate(b, c) == lb; };
    int dim = 0;
    bool full = true;
    for (const auto& d : directions) full = full && in_cell({s.x + probe * d.x, s.y + probe * d.y});
    if (full) {
      dim = 2;
    } else {
      for (const auto& d : directions)
        if (in_cell({s.x + probe * d.x, s.y + probe * d.y}) && in_cell({s.x - probe * d.x, s.y - probe * d.y})) {
          dim = 1;
          break;
        }
    }
    m.set(la, lb, std::max(m.get(la, lb), dim));
  }
  return m;
}

// ------------------------------------------------------------ live endpoint

// A fixture server on a free loopback port, with endpoint settings pointing at it.
struct LiveFixture {
  explicit LiveFixture(const std::string& profile) : server(fixture::Profile::named(profile)) {
    server.start();
    config.query_url = server.query_url();
    config.graph_store_url = server.data_url();
    config.update_url = server.update_url();
    config.timeout_seconds = 10;
  }

  fixture::Server server;
  client::EndpointConfig config;
};

}  // namespace gsb::testing_support
