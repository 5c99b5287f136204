#include "gsb/results.hpp"

#include <stdexcept>

#include "gsb/xml.hpp"

namespace gsb::results {

using nlohmann::json;
using rdf::Term;
using rdf::TermKind;

std::string_view category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Connection: return "connection";
    case ErrorCategory::Timeout: return "timeout";
    case ErrorCategory::Protocol: return "protocol";
    case ErrorCategory::MalformedResults: return "malformed-results";
    case ErrorCategory::Configuration: return "configuration";
  }
  return "unknown";
}

json term_to_json(const Term& term) {
  switch (term.kind) {
    case TermKind::Iri: return {{"type", "uri"}, {"value", term.value}};
    case TermKind::Blank: return {{"type", "bnode"}, {"value", term.value}};
    case TermKind::Literal: break;
  }
  json j = {{"type", "literal"}, {"value", term.value}};
  if (!term.lang.empty()) j["xml:lang"] = term.lang;
  else if (term.datatype != rdf::xsd("string")) j["datatype"] = term.datatype;
  return j;
}

Term term_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.contains("value") || !j["type"].is_string() ||
      !j["value"].is_string())
    throw std::invalid_argument("term must be an object with string 'type' and 'value'");
  const auto type = j["type"].get<std::string>();
  auto value = j["value"].get<std::string>();
  if (type == "uri") return Term::iri(std::move(value));
  if (type == "bnode") return Term::blank(std::move(value));
  if (type == "literal" || type == "typed-literal") {
    if (j.contains("xml:lang")) return Term::lang_literal(std::move(value), j["xml:lang"].get<std::string>());
    if (j.contains("datatype")) return Term::literal(std::move(value), j["datatype"].get<std::string>());
    return Term::literal(std::move(value));
  }
  throw std::invalid_argument("unknown term type '" + type + "'");
}

json to_json(const QueryOutcome& outcome) {
  switch (outcome.kind()) {
    case OutcomeKind::Boolean: return {{"head", json::object()}, {"boolean", outcome.boolean()}};
    case OutcomeKind::Solutions: {
      const auto& s = outcome.solutions();
      json bindings = json::array();
      for (const auto& row : s.rows) {
        json b = json::object();
        for (const auto& [var, term] : row) b[var] = term_to_json(term);
        bindings.push_back(std::move(b));
      }
      return {{"head", {{"vars", s.variables}}}, {"results", {{"bindings", std::move(bindings)}}}};
    }
    case OutcomeKind::Error: break;
  }
  throw std::invalid_argument("an error outcome has no results document");
}

QueryOutcome from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("results document must be an object");
  if (j.contains("boolean")) {
    if (!j["boolean"].is_boolean()) throw std::invalid_argument("'boolean' must be true or false");
    return QueryOutcome::boolean(j["boolean"].get<bool>());
  }
  if (!j.contains("head") || !j.contains("results")) throw std::invalid_argument("missing 'head' or 'results'");
  SolutionSequence s;
  const auto& head = j["head"];
  if (head.contains("vars")) {
    for (const auto& v : head["vars"]) {
      if (!v.is_string()) throw std::invalid_argument("variable names must be strings");
      s.variables.push_back(v.get<std::string>());
    }
  }
  const auto& bindings = j["results"].at("bindings");
  if (!bindings.is_array()) throw std::invalid_argument("'bindings' must be an array");
  for (const auto& b : bindings) {
    if (!b.is_object()) throw std::invalid_argument("a solution must be an object");
    Row row;
    for (const auto& [var, term] : b.items()) row[var] = term_from_json(term);
    s.rows.push_back(std::move(row));
  }
  return QueryOutcome::solutions(std::move(s));
}

std::string render_json(const QueryOutcome& outcome) { return to_json(outcome).dump(); }

namespace {

std::string xml_term(const Term& t) {
  switch (t.kind) {
    case TermKind::Iri: return "<uri>" + xml::escape_text(t.value) + "</uri>";
    case TermKind::Blank: return "<bnode>" + xml::escape_text(t.value) + "</bnode>";
    case TermKind::Literal: break;
  }
  std::string out = "<literal";
  if (!t.lang.empty()) out += " xml:lang=\"" + xml::escape_attribute(t.lang) + "\"";
  else if (t.datatype != rdf::xsd("string")) out += " datatype=\"" + xml::escape_attribute(t.datatype) + "\"";
  return out + ">" + xml::escape_text(t.value) + "</literal>";
}

Term term_from_xml(const xml::Element& e) {
  if (e.local == "uri") return Term::iri(e.text);
  if (e.local == "bnode") return Term::blank(e.text);
  if (e.local == "literal") {
    if (const auto* lang = e.attribute("lang")) return Term::lang_literal(e.text, *lang);
    if (const auto* dt = e.attribute("datatype")) return Term::literal(e.text, *dt);
    return Term::literal(e.text);
  }
  throw std::invalid_argument("unknown term element <" + e.qname + ">");
}

QueryOutcome parse_xml(std::string_view body) {
  const auto root = xml::parse(body);
  if (root.local != "sparql") throw std::invalid_argument("root element must be <sparql>");
  if (const auto* b = root.child("boolean")) {
    if (b->text == "true") return QueryOutcome::boolean(true);
    if (b->text == "false") return QueryOutcome::boolean(false);
    throw std::invalid_argument("<boolean> must hold true or false");
  }
  SolutionSequence s;
  if (const auto* head = root.child("head"))
    for (const auto* v : head->children_named("variable")) {
      const auto* name = v->attribute("name");
      if (!name) throw std::invalid_argument("<variable> without a name");
      s.variables.push_back(*name);
    }
  const auto* results = root.child("results");
  if (!results) throw std::invalid_argument("neither <boolean> nor <results>");
  for (const auto* r : results->children_named("result")) {
    Row row;
    for (const auto* b : r->children_named("binding")) {
      const auto* name = b->attribute("name");
      if (!name || b->children.size() != 1) throw std::invalid_argument("malformed <binding>");
      row[*name] = term_from_xml(b->children.front());
    }
    s.rows.push_back(std::move(row));
  }
  return QueryOutcome::solutions(std::move(s));
}

}  // namespace

std::string render_xml(const QueryOutcome& outcome) {
  std::string out = "<?xml version=\"1.0\"?>\n<sparql xmlns=\"" + std::string(kResultsNamespace) + "\">\n";
  switch (outcome.kind()) {
    case OutcomeKind::Boolean:
      out += "  <head/>\n  <boolean>" + std::string(outcome.boolean() ? "true" : "false") + "</boolean>\n";
      break;
    case OutcomeKind::Solutions: {
      const auto& s = outcome.solutions();
      out += "  <head>\n";
      for (const auto& v : s.variables) out += "    <variable name=\"" + xml::escape_attribute(v) + "\"/>\n";
      out += "  </head>\n  <results>\n";
      for (const auto& row : s.rows) {
        out += "    <result>\n";
        for (const auto& [var, term] : row)
          out += "      <binding name=\"" + xml::escape_attribute(var) + "\">" + xml_term(term) + "</binding>\n";
        out += "    </result>\n";
      }
      out += "  </results>\n";
      break;
    }
    case OutcomeKind::Error: throw std::invalid_argument("an error outcome has no results document");
  }
  return out + "</sparql>\n";
}

QueryOutcome parse_results(std::string_view body, std::string_view content_type) {
  bool use_json = content_type.find("json") != std::string_view::npos;
  const bool use_xml = content_type.find("xml") != std::string_view::npos;
  if (!use_json && !use_xml) {
    const auto first = body.find_first_not_of(" \t\r\n");
    use_json = first != std::string_view::npos && body[first] == '{';
  }
  try {
    if (use_json) return from_json(json::parse(body));
    return parse_xml(body);
  } catch (const std::exception& e) {
    return QueryOutcome::error(ErrorCategory::MalformedResults, e.what());
  }
}

std::string describe(const QueryOutcome& outcome) {
  switch (outcome.kind()) {
    case OutcomeKind::Boolean: return outcome.boolean() ? "true" : "false";
    case OutcomeKind::Error: {
      const auto& e = outcome.error();
      return std::string(category_name(e.category)) + ": " + e.message;
    }
    case OutcomeKind::Solutions: break;
  }
  const auto& s = outcome.solutions();
  std::string out;
  for (const auto& row : s.rows) {
    if (!out.empty()) out += "\n";
    std::string line;
    for (const auto& var : s.variables) {
      if (!line.empty()) line += " ";
      const auto it = row.find(var);
      line += "?" + var + "=" + (it == row.end() ? std::string("UNDEF") : rdf::to_ntriples(it->second));
    }
    out += line;
  }
  return out.empty() ? "(no solutions)" : out;
}

}  // namespace gsb::results
