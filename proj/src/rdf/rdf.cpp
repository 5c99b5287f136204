#include <algorithm>
#include <cctype>
#include <set>

#include "gsb/rdf.hpp"
#include "gsb/xml.hpp"
#include "lexer.hpp"

namespace gsb::rdf {

std::string rdf(std::string_view local) { return std::string(kRdf) + std::string(local); }
std::string rdfs(std::string_view local) { return std::string(kRdfs) + std::string(local); }
std::string xsd(std::string_view local) { return std::string(kXsd) + std::string(local); }
std::string geo(std::string_view local) { return std::string(kGeo) + std::string(local); }
std::string geof(std::string_view local) { return std::string(kGeof) + std::string(local); }
std::string sf(std::string_view local) { return std::string(kSf) + std::string(local); }
std::string gml(std::string_view local) { return std::string(kGmlOnt) + std::string(local); }
std::string my(std::string_view local) { return std::string(kMy) + std::string(local); }

Term Term::iri(std::string iri) { return {TermKind::Iri, std::move(iri), {}, {}}; }
Term Term::blank(std::string label) { return {TermKind::Blank, std::move(label), {}, {}}; }
Term Term::literal(std::string lexical, std::string datatype) {
  return {TermKind::Literal, std::move(lexical), std::move(datatype), {}};
}
Term Term::lang_literal(std::string lexical, std::string lang) {
  std::transform(lang.begin(), lang.end(), lang.begin(), [](unsigned char c) { return std::tolower(c); });
  return {TermKind::Literal, std::move(lexical), rdf("langString"), std::move(lang)};
}
Term Term::boolean(bool value) { return literal(value ? "true" : "false", xsd("boolean")); }
Term Term::integer(long long value) { return literal(std::to_string(value), xsd("integer")); }

const PrefixMap& standard_prefixes() {
  static const PrefixMap prefixes = {
      {"rdf", std::string(kRdf)},   {"rdfs", std::string(kRdfs)}, {"xsd", std::string(kXsd)},
      {"geo", std::string(kGeo)},   {"geof", std::string(kGeof)}, {"sf", std::string(kSf)},
      {"gml", std::string(kGmlOnt)}, {"my", std::string(kMy)},
  };
  return prefixes;
}

std::string escape_string(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string to_ntriples(const Term& term) {
  switch (term.kind) {
    case TermKind::Iri: return "<" + term.value + ">";
    case TermKind::Blank: return "_:" + term.value;
    case TermKind::Literal: break;
  }
  std::string out = "\"" + escape_string(term.value) + "\"";
  if (!term.lang.empty()) return out + "@" + term.lang;
  if (term.datatype != xsd("string")) out += "^^<" + term.datatype + ">";
  return out;
}

namespace {

using detail::Lexer;
using detail::Tok;
using detail::Token;

bool is_absolute(std::string_view iri) {
  const auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  return std::all_of(iri.begin(), iri.begin() + static_cast<std::ptrdiff_t>(colon), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
  });
}

class TurtleReader {
 public:
  explicit TurtleReader(std::string_view text) : lex_(text) {}

  std::vector<Triple> read() {
    while (lex_.peek().type != Tok::End) statement();
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw SyntaxError(what, lex_.peek().line); }

  Token expect(Tok type, std::string_view text = {}) {
    Token t = lex_.next();
    if (t.type != type || (!text.empty() && t.text != text))
      throw SyntaxError("expected " + (text.empty() ? std::string("token") : "'" + std::string(text) + "'") +
                            ", found '" + t.text + "'",
                        t.line);
    return t;
  }

  bool accept_punct(std::string_view p) {
    if (lex_.peek().type == Tok::Punct && lex_.peek().text == p) {
      lex_.next();
      return true;
    }
    return false;
  }

  std::string resolve(const std::string& iri) { return is_absolute(iri) || base_.empty() ? iri : base_ + iri; }

  void directive(bool sparql_style, const std::string& keyword) {
    if (keyword == "prefix") {
      const Token p = expect(Tok::PName);
      if (p.text.back() != ':') throw SyntaxError("prefix name must end with ':'", p.line);
      prefixes_[p.text.substr(0, p.text.size() - 1)] = resolve(expect(Tok::IriRef).text);
    } else {
      base_ = resolve(expect(Tok::IriRef).text);
    }
    if (!sparql_style) expect(Tok::Punct, ".");
  }

  void statement() {
    const Token& t = lex_.peek();
    if (t.type == Tok::LangTag && (t.text == "prefix" || t.text == "base")) {
      const std::string kw = lex_.next().text;
      directive(false, kw);
      return;
    }
    if (t.type == Tok::Name) {
      std::string lower = t.text;
      std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
      if (lower == "prefix" || lower == "base") {
        lex_.next();
        directive(true, lower);
        return;
      }
    }
    if (accept_punct("[")) {
      const Term subject = fresh_blank();
      if (!accept_punct("]")) {
        predicate_object_list(subject);
        expect(Tok::Punct, "]");
      }
      if (!accept_punct(".")) {
        predicate_object_list(subject);
        expect(Tok::Punct, ".");
      }
      return;
    }
    const Term subject = resource(lex_.next());
    predicate_object_list(subject);
    expect(Tok::Punct, ".");
  }

  Term fresh_blank() { return Term::blank("anon" + std::to_string(++anon_)); }

  Term resource(const Token& t) {
    switch (t.type) {
      case Tok::IriRef: return Term::iri(resolve(t.text));
      case Tok::PName: return Term::iri(detail::expand_pname(t.text, prefixes_, t.line));
      case Tok::Blank: return Term::blank(t.text);
      default: break;
    }
    throw SyntaxError("expected IRI or blank node, found '" + t.text + "'", t.line);
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      const Token p = lex_.next();
      const Term predicate = p.type == Tok::Name && p.text == "a" ? Term::iri(rdf("type")) : resource(p);
      if (!predicate.is_iri()) throw SyntaxError("predicate must be an IRI", p.line);
      do {
        out_.push_back({subject, predicate, object()});
      } while (accept_punct(","));
      if (!accept_punct(";")) return;
      // trailing ';' before '.' or ']'
      const Token& n = lex_.peek();
      if (n.type == Tok::Punct && (n.text == "." || n.text == "]")) return;
    }
  }

  Term object() {
    Token t = lex_.next();
    switch (t.type) {
      case Tok::String: {
        if (lex_.peek().type == Tok::LangTag) return Term::lang_literal(t.text, lex_.next().text);
        if (lex_.peek().type == Tok::DoubleCaret) {
          lex_.next();
          const Term dt = resource(lex_.next());
          if (!dt.is_iri()) fail("datatype must be an IRI");
          return Term::literal(t.text, dt.value);
        }
        return Term::literal(t.text);
      }
      case Tok::Integer: return Term::literal(t.text, xsd("integer"));
      case Tok::Decimal: return Term::literal(t.text, xsd("decimal"));
      case Tok::Double: return Term::literal(t.text, xsd("double"));
      case Tok::Name:
        if (t.text == "true" || t.text == "false") return Term::literal(t.text, xsd("boolean"));
        break;
      case Tok::Punct:
        if (t.text == "-" || t.text == "+") {
          Token n = lex_.next();
          const std::string sign = t.text == "-" ? "-" : "";
          if (n.type == Tok::Integer) return Term::literal(sign + n.text, xsd("integer"));
          if (n.type == Tok::Decimal) return Term::literal(sign + n.text, xsd("decimal"));
          if (n.type == Tok::Double) return Term::literal(sign + n.text, xsd("double"));
          throw SyntaxError("expected number after sign", n.line);
        }
        if (t.text == "[") {
          const Term node = fresh_blank();
          if (!accept_punct("]")) {
            predicate_object_list(node);
            expect(Tok::Punct, "]");
          }
          return node;
        }
        break;
      default: return resource(t);
    }
    throw SyntaxError("unexpected '" + t.text + "' in object position", t.line);
  }

  Lexer lex_;
  PrefixMap prefixes_;
  std::string base_;
  std::vector<Triple> out_;
  int anon_ = 0;
};

bool safe_local(std::string_view local) {
  if (local.empty()) return true;
  if (local.front() == '-' || local.front() == '.' || local.back() == '.') return false;
  return std::all_of(local.begin(), local.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::string turtle_iri(const std::string& iri, const PrefixMap& prefixes) {
  for (const auto& [prefix, ns] : prefixes)
    if (iri.starts_with(ns) && safe_local(std::string_view(iri).substr(ns.size())))
      return prefix + ":" + iri.substr(ns.size());
  return "<" + iri + ">";
}

std::string turtle_term(const Term& t, const PrefixMap& prefixes) {
  switch (t.kind) {
    case TermKind::Iri: return turtle_iri(t.value, prefixes);
    case TermKind::Blank: return "_:" + t.value;
    case TermKind::Literal: break;
  }
  std::string out = "\"" + escape_string(t.value) + "\"";
  if (!t.lang.empty()) return out + "@" + t.lang;
  if (t.datatype != xsd("string")) out += "^^" + turtle_iri(t.datatype, prefixes);
  return out;
}

std::vector<Triple> sorted_unique(const std::vector<Triple>& triples) {
  std::vector<Triple> sorted = triples;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return sorted;
}

bool is_ncname(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s.front())) || s.front() == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

}  // namespace

std::vector<Triple> parse_turtle(std::string_view text) { return TurtleReader(text).read(); }

std::string write_turtle(const std::vector<Triple>& triples, const PrefixMap& prefixes) {
  std::string out;
  for (const auto& [prefix, ns] : prefixes) out += "@prefix " + prefix + ": <" + ns + "> .\n";
  const auto sorted = sorted_unique(triples);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& t = sorted[i];
    const bool new_subject = i == 0 || sorted[i - 1].subject != t.subject;
    const bool new_predicate = new_subject || sorted[i - 1].predicate != t.predicate;
    if (new_subject) out += "\n" + turtle_term(t.subject, prefixes) + "\n";
    if (new_predicate) {
      const std::string p = t.predicate.value == rdf("type") ? "a" : turtle_term(t.predicate, prefixes);
      out += "    " + p + " " + turtle_term(t.object, prefixes);
    } else {
      out += ",\n        " + turtle_term(t.object, prefixes);
    }
    const bool last_of_subject = i + 1 == sorted.size() || sorted[i + 1].subject != t.subject;
    const bool last_of_predicate = last_of_subject || sorted[i + 1].predicate != t.predicate;
    if (last_of_subject) out += " .\n";
    else if (last_of_predicate) out += " ;\n";
  }
  return out;
}

std::string write_ntriples(const std::vector<Triple>& triples) {
  std::string out;
  for (const auto& t : sorted_unique(triples))
    out += to_ntriples(t.subject) + " " + to_ntriples(t.predicate) + " " + to_ntriples(t.object) + " .\n";
  return out;
}

std::string write_rdfxml(const std::vector<Triple>& triples, const PrefixMap& prefixes) {
  const auto sorted = sorted_unique(triples);
  PrefixMap by_ns;  // namespace IRI -> prefix
  for (const auto& [prefix, ns] : prefixes) by_ns[ns] = prefix;
  by_ns[std::string(kRdf)] = "rdf";

  auto qname = [&](const std::string& iri) -> std::pair<std::string, std::string> {
    std::string best_ns;
    for (const auto& [ns, prefix] : by_ns)
      if (iri.starts_with(ns) && ns.size() > best_ns.size() && is_ncname(std::string_view(iri).substr(ns.size())))
        best_ns = ns;
    if (!best_ns.empty()) return {best_ns, iri.substr(best_ns.size())};
    auto split = iri.find_last_of("#/");
    while (split != std::string::npos && split + 1 < iri.size() && !is_ncname(iri.substr(split + 1)))
      split = split == 0 ? std::string::npos : iri.find_last_of("#/", split - 1);
    if (split == std::string::npos || split + 1 >= iri.size())
      throw std::invalid_argument("predicate <" + iri + "> cannot be written as an XML qualified name");
    return {iri.substr(0, split + 1), iri.substr(split + 1)};
  };

  std::set<std::string> used_ns = {std::string(kRdf)};
  for (const auto& t : sorted) used_ns.insert(qname(t.predicate.value).first);
  int generated = 0;
  for (const auto& ns : used_ns)
    if (!by_ns.contains(ns)) by_ns[ns] = "ns" + std::to_string(generated++);

  std::string out = "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<rdf:RDF";
  for (const auto& ns : used_ns) out += "\n    xmlns:" + by_ns[ns] + "=\"" + xml::escape_attribute(ns) + "\"";
  out += ">\n";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& t = sorted[i];
    if (i == 0 || sorted[i - 1].subject != t.subject) {
      out += t.subject.is_blank() ? "  <rdf:Description rdf:nodeID=\"" + xml::escape_attribute(t.subject.value) + "\">\n"
                                  : "  <rdf:Description rdf:about=\"" + xml::escape_attribute(t.subject.value) + "\">\n";
    }
    const auto [ns, local] = qname(t.predicate.value);
    const std::string name = by_ns[ns] + ":" + local;
    out += "    <" + name;
    switch (t.object.kind) {
      case TermKind::Iri: out += " rdf:resource=\"" + xml::escape_attribute(t.object.value) + "\"/>\n"; break;
      case TermKind::Blank: out += " rdf:nodeID=\"" + xml::escape_attribute(t.object.value) + "\"/>\n"; break;
      case TermKind::Literal:
        if (!t.object.lang.empty()) out += " xml:lang=\"" + xml::escape_attribute(t.object.lang) + "\"";
        else if (t.object.datatype != xsd("string"))
          out += " rdf:datatype=\"" + xml::escape_attribute(t.object.datatype) + "\"";
        out += ">" + xml::escape_text(t.object.value) + "</" + name + ">\n";
        break;
    }
    if (i + 1 == sorted.size() || sorted[i + 1].subject != t.subject) out += "  </rdf:Description>\n";
  }
  out += "</rdf:RDF>\n";
  return out;
}

}  // namespace gsb::rdf
