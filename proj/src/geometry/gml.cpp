#include <charconv>

#include "gsb/geometry/geometry.hpp"
#include "gsb/xml.hpp"
#include "serialization_detail.hpp"

namespace gsb::geometry {

namespace {

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

[[noreturn]] void fail(const std::string& what) { throw ParseError(what, 0); }

std::vector<double> read_numbers(std::string_view text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',') {
      ++pos;
      continue;
    }
    if (c == '+') ++pos;
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) fail("malformed coordinate list in GML");
    values.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
  }
  return values;
}

std::vector<Coord> to_coords(const std::vector<double>& values, const CrsRef& crs) {
  if (values.size() % 2 != 0) fail("odd number of ordinates (only 2D coordinates are supported)");
  std::vector<Coord> coords;
  for (std::size_t i = 0; i < values.size(); i += 2)
    coords.push_back(detail::to_axis_order({values[i], values[i + 1]}, crs));
  return coords;
}

// Coordinates of a LineString or LinearRing: a posList, a run of pos elements,
// or a GML 2 style coordinates element.
std::vector<Coord> read_curve_coords(const xml::Element& e, const CrsRef& crs) {
  if (const auto* pos_list = e.child("posList")) return to_coords(read_numbers(pos_list->text), crs);
  if (const auto* coordinates = e.child("coordinates"))
    return to_coords(read_numbers(coordinates->text), crs);
  std::vector<double> values;
  for (const auto* pos : e.children_named("pos")) {
    const auto v = read_numbers(pos->text);
    values.insert(values.end(), v.begin(), v.end());
  }
  return to_coords(values, crs);
}

std::vector<Coord> read_point_coords(const xml::Element& e, const CrsRef& crs) {
  const auto* pos = e.child("pos");
  if (!pos) pos = e.child("coordinates");
  if (!pos) return {};  // <gml:Point/> is the empty point
  auto coords = to_coords(read_numbers(pos->text), crs);
  if (coords.size() > 1) fail("gml:pos holds more than one position");
  return coords;
}

Ring read_ring(const xml::Element& boundary, const CrsRef& crs) {
  const auto* ring = boundary.child("LinearRing");
  if (!ring) fail("polygon boundary without gml:LinearRing");
  return read_curve_coords(*ring, crs);
}

Geometry read_geometry(const xml::Element& e, const CrsRef& crs) {
  if (const auto* dim = e.attribute("srsDimension"); dim && *dim != "2")
    fail("only 2D coordinates are supported");
  if (e.local == "Point") {
    const auto coords = read_point_coords(e, crs);
    return coords.empty() ? Geometry::empty(GeometryKind::Point, crs) : Geometry::point(coords[0], crs);
  }
  if (e.local == "LineString" || e.local == "LinearRing") {
    auto coords = read_curve_coords(e, crs);
    if (coords.size() == 1) fail("a LineString needs at least 2 coordinates");
    return Geometry::line_string(std::move(coords), crs);
  }
  if (e.local == "Polygon") {
    std::vector<Ring> rings;
    const auto* exterior = e.child("exterior");
    if (!exterior) exterior = e.child("outerBoundaryIs");
    if (exterior) {
      Ring outer = read_ring(*exterior, crs);
      if (!outer.empty()) {
        rings.push_back(std::move(outer));
        for (const char* name : {"interior", "innerBoundaryIs"})
          for (const auto* inner : e.children_named(name)) rings.push_back(read_ring(*inner, crs));
      }
    }
    for (const auto& ring : rings)
      if (ring.size() < 4 || ring.front() != ring.back()) fail("unclosed ring");
    return Geometry::polygon(std::move(rings), crs);
  }
  if (e.local == "MultiPoint") {
    std::vector<Coord> coords;
    for (const auto* member : e.children_named("pointMember"))
      if (const auto* p = member->child("Point")) {
        const auto c = read_point_coords(*p, crs);
        coords.insert(coords.end(), c.begin(), c.end());
      }
    if (const auto* members = e.child("pointMembers"))
      for (const auto* p : members->children_named("Point")) {
        const auto c = read_point_coords(*p, crs);
        coords.insert(coords.end(), c.begin(), c.end());
      }
    return Geometry::multi_point(std::move(coords), crs);
  }
  fail("unknown GML element '" + e.qname + "'");
}

std::string pos_text(const std::vector<Coord>& coords, const CrsRef& crs) {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ' ';
    const Coord c = detail::to_axis_order(coords[i], crs);
    out += format_number(c.x);
    out += ' ';
    out += format_number(c.y);
  }
  return out;
}

std::string ring_element(const char* boundary, const Ring& ring, const CrsRef& crs) {
  return std::string("<gml:") + boundary + "><gml:LinearRing><gml:posList>" + pos_text(ring, crs) +
         "</gml:posList></gml:LinearRing></gml:" + boundary + ">";
}

}  // namespace

GeometryLiteral parse_gml(std::string_view text) {
  GeometryLiteral literal{Serialization::GML, std::string(text), Geometry()};
  if (is_blank(text)) return literal;
  xml::Element root;
  try {
    root = xml::parse(text);
  } catch (const xml::XmlError& e) {
    throw ParseError(std::string("GML is not well-formed XML: ") + e.what(), e.offset());
  }
  CrsRef crs;
  if (const auto* srs = root.attribute("srsName")) crs = CrsRef::from_uri(*srs);
  try {
    literal.parsed = read_geometry(root, crs);
  } catch (const ParseError&) {
    throw;
  } catch (const GeometryError& e) {
    throw ParseError(e.what(), 0);
  }
  return literal;
}

namespace detail {

std::string to_gml(const Geometry& g, bool include_crs) {
  if (g.kind() == GeometryKind::Unspecified) return "";
  const std::string name = "gml:" + std::string(kind_name(g.kind()));
  std::string out = "<" + name + " xmlns:gml=\"" + std::string(kGmlNamespace) + "\"";
  if (include_crs) out += " srsName=\"" + xml::escape_attribute(g.crs().uri) + "\"";
  out += ">";
  const auto& crs = g.crs();
  switch (g.kind()) {
    case GeometryKind::Point:
      out += "<gml:pos>" + (g.is_empty() ? std::string() : pos_text(g.parts()[0], crs)) + "</gml:pos>";
      break;
    case GeometryKind::LineString:
      out += "<gml:posList>" + (g.is_empty() ? std::string() : pos_text(g.parts()[0], crs)) +
             "</gml:posList>";
      break;
    case GeometryKind::Polygon:
      for (std::size_t i = 0; i < g.parts().size(); ++i)
        out += ring_element(i == 0 ? "exterior" : "interior", g.parts()[i], crs);
      break;
    case GeometryKind::MultiPoint:
      if (!g.is_empty())
        for (const auto& c : g.parts()[0])
          out += "<gml:pointMember><gml:Point><gml:pos>" + pos_text({c}, crs) +
                 "</gml:pos></gml:Point></gml:pointMember>";
      break;
    case GeometryKind::Unspecified: break;
  }
  return out + "</" + name + ">";
}

}  // namespace detail

}  // namespace gsb::geometry
