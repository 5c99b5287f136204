#include <cctype>
#include <charconv>

#include "gsb/geometry/geometry.hpp"
#include "serialization_detail.hpp"

namespace gsb::geometry {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

class WktReader {
 public:
  explicit WktReader(std::string_view text) : text_(text) {}

  Geometry read() {
    skip_space();
    CrsRef crs;
    if (!at_end() && peek() == '<') {
      const auto close = text_.find('>', pos_);
      if (close == std::string_view::npos) fail("unterminated CRS IRI");
      const auto iri = text_.substr(pos_ + 1, close - pos_ - 1);
      if (iri.empty() || iri.find(':') == std::string_view::npos) fail("CRS IRI is not absolute");
      crs = CrsRef::from_uri(std::string(iri));
      pos_ = close + 1;
      skip_space();
    }
    if (at_end()) return Geometry::empty(GeometryKind::Unspecified, crs);

    const auto keyword_at = pos_;
    const std::string keyword = upper(read_word());
    GeometryKind kind;
    if (keyword == "POINT") kind = GeometryKind::Point;
    else if (keyword == "LINESTRING" || keyword == "LINEARRING") kind = GeometryKind::LineString;
    else if (keyword == "POLYGON") kind = GeometryKind::Polygon;
    else if (keyword == "MULTIPOINT") kind = GeometryKind::MultiPoint;
    else if (keyword.empty()) fail("expected a geometry keyword");
    else {
      pos_ = keyword_at;
      fail("unknown geometry keyword '" + keyword + "'");
    }

    skip_space();
    if (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) {
      const auto word_at = pos_;
      const std::string word = upper(read_word());
      if (word != "EMPTY") {
        pos_ = word_at;
        fail(word == "Z" || word == "M" || word == "ZM" ? "only 2D coordinates are supported"
                                                          : "expected '(' or EMPTY");
      }
      finish();
      return Geometry::empty(kind, crs);
    }

    Geometry g;
    try {
      switch (kind) {
        case GeometryKind::Point: {
          expect('(');
          const Coord c = read_coord(crs);
          expect(')');
          g = Geometry::point(c, crs);
          break;
        }
        case GeometryKind::LineString: {
          auto coords = read_coord_list(crs);
          if (coords.size() < 2) fail("a LineString needs at least 2 coordinates");
          g = Geometry::line_string(std::move(coords), crs);
          break;
        }
        case GeometryKind::Polygon: {
          expect('(');
          std::vector<Ring> rings;
          for (;;) {
            const auto ring_at = pos_;
            auto ring = read_coord_list(crs);
            if (ring.size() < 4 || ring.front() != ring.back()) {
              pos_ = ring_at;
              fail("unclosed ring");
            }
            rings.push_back(std::move(ring));
            skip_space();
            if (try_consume(',')) continue;
            expect(')');
            break;
          }
          g = Geometry::polygon(std::move(rings), crs);
          break;
        }
        case GeometryKind::MultiPoint: {
          expect('(');
          std::vector<Coord> coords;
          for (;;) {
            skip_space();
            if (try_consume('(')) {
              coords.push_back(read_coord(crs));
              expect(')');
            } else {
              coords.push_back(read_coord(crs));
            }
            skip_space();
            if (try_consume(',')) continue;
            expect(')');
            break;
          }
          g = Geometry::multi_point(std::move(coords), crs);
          break;
        }
        case GeometryKind::Unspecified: break;
      }
    } catch (const ParseError&) {
      throw;
    } catch (const GeometryError& e) {
      fail(e.what());
    }
    finish();
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  void finish() {
    skip_space();
    if (!at_end()) fail("unexpected trailing text");
  }

  bool try_consume(char c) {
    skip_space();
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "'");
  }

  std::string_view read_word() {
    const auto start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  double read_number() {
    skip_space();
    auto start = pos_;
    if (!at_end() && peek() == '+') start = ++pos_;
    double value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("malformed coordinate list: expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  Coord read_coord(const CrsRef& crs) {
    const double first = read_number();
    const double second = read_number();
    skip_space();
    if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '-' || peek() == '+' ||
                      peek() == '.'))
      fail("only 2D coordinates are supported");
    return detail::to_axis_order({first, second}, crs);
  }

  std::vector<Coord> read_coord_list(const CrsRef& crs) {
    expect('(');
    std::vector<Coord> coords;
    for (;;) {
      coords.push_back(read_coord(crs));
      if (try_consume(',')) continue;
      expect(')');
      return coords;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void append_coord(std::string& out, Coord c, const CrsRef& crs) {
  const Coord axis = detail::to_axis_order(c, crs);
  out += format_number(axis.x);
  out += ' ';
  out += format_number(axis.y);
}

void append_coord_list(std::string& out, const std::vector<Coord>& coords, const CrsRef& crs) {
  out += '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ", ";
    append_coord(out, coords[i], crs);
  }
  out += ')';
}

}  // namespace

GeometryLiteral parse_wkt(std::string_view text) {
  return {Serialization::WKT, std::string(text), WktReader(text).read()};
}

namespace detail {

std::string to_wkt(const Geometry& g, bool include_crs) {
  if (g.kind() == GeometryKind::Unspecified) return "";
  std::string out;
  if (include_crs) {
    out += '<';
    out += g.crs().uri;
    out += "> ";
  }
  out += kind_name(g.kind());
  if (g.is_empty()) return out + " EMPTY";
  const auto& crs = g.crs();
  switch (g.kind()) {
    case GeometryKind::Point:
      out += '(';
      append_coord(out, g.point_coord(), crs);
      out += ')';
      break;
    case GeometryKind::LineString: append_coord_list(out, g.parts()[0], crs); break;
    case GeometryKind::Polygon:
      out += '(';
      for (std::size_t i = 0; i < g.parts().size(); ++i) {
        if (i) out += ", ";
        append_coord_list(out, g.parts()[i], crs);
      }
      out += ')';
      break;
    case GeometryKind::MultiPoint:
      out += '(';
      for (std::size_t i = 0; i < g.parts()[0].size(); ++i) {
        if (i) out += ", ";
        out += '(';
        append_coord(out, g.parts()[0][i], crs);
        out += ')';
      }
      out += ')';
      break;
    case GeometryKind::Unspecified: break;
  }
  return out;
}

}  // namespace detail

}  // namespace gsb::geometry
