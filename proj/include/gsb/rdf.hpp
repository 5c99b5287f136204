#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsb::rdf {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kGeo = "http://www.opengis.net/ont/geosparql#";
inline constexpr std::string_view kGeof = "http://www.opengis.net/def/function/geosparql/";
inline constexpr std::string_view kSf = "http://www.opengis.net/ont/sf#";
inline constexpr std::string_view kGmlOnt = "http://www.opengis.net/ont/gml#";
inline constexpr std::string_view kMy = "http://example.org/ApplicationSchema#";

std::string rdf(std::string_view local);
std::string rdfs(std::string_view local);
std::string xsd(std::string_view local);
std::string geo(std::string_view local);
std::string geof(std::string_view local);
std::string sf(std::string_view local);
std::string gml(std::string_view local);
std::string my(std::string_view local);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class TermKind { Iri, Blank, Literal };

// Literals always carry a datatype: xsd:string for simple literals and
// rdf:langString when a language tag is present.
struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;  // IRI, blank node label or lexical form
  std::string datatype;
  std::string lang;

  static Term iri(std::string iri);
  static Term blank(std::string label);
  static Term literal(std::string lexical, std::string datatype = xsd("string"));
  static Term lang_literal(std::string lexical, std::string lang);
  static Term boolean(bool value);
  static Term integer(long long value);

  bool is_iri() const { return kind == TermKind::Iri; }
  bool is_blank() const { return kind == TermKind::Blank; }
  bool is_literal() const { return kind == TermKind::Literal; }

  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

using PrefixMap = std::map<std::string, std::string>;  // prefix -> namespace IRI

// The prefixes used for every emitted document.
const PrefixMap& standard_prefixes();

// N-Triples form of a single term ("<iri>", "_:b", "\"lex\"^^<dt>").
std::string to_ntriples(const Term& term);
std::string escape_string(std::string_view text);

// Turtle subset: @prefix/@base and PREFIX/BASE directives, IRIs, prefixed
// names, `a`, blank node labels and [], short and long strings, language tags,
// datatypes, numeric and boolean shorthands, `;` and `,` lists.
std::vector<Triple> parse_turtle(std::string_view text);

// Turtle with the given prefixes, subjects grouped and sorted.
std::string write_turtle(const std::vector<Triple>& triples, const PrefixMap& prefixes = standard_prefixes());
std::string write_ntriples(const std::vector<Triple>& triples);
std::string write_rdfxml(const std::vector<Triple>& triples, const PrefixMap& prefixes = standard_prefixes());

}  // namespace gsb::rdf
