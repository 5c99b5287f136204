#include "gsb/checker.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "gsb/geometry/functions.hpp"
#include "gsb/geometry/geometry.hpp"
#include "gsb/xml.hpp"

namespace gsb::checker {

namespace geom = gsb::geometry;
using catalog::Answer;
using catalog::CheckerKind;
using rdf::Term;
using rdf::TermKind;
using results::OutcomeKind;
using results::QueryOutcome;
using results::SolutionSequence;

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Correct: return "correct";
    case Verdict::Incorrect: return "incorrect";
    case Verdict::Error: return "error";
  }
  return "error";
}

Verdict verdict_from_name(std::string_view name) {
  if (name == "correct") return Verdict::Correct;
  if (name == "incorrect") return Verdict::Incorrect;
  if (name == "error") return Verdict::Error;
  throw std::invalid_argument("unknown verdict '" + std::string(name) + "'");
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (const char c : trim(s)) {
    if (is_space(c)) {
      pending = true;
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

}  // namespace

std::string normalize_wkt(std::string_view text) {
  text = trim(text);
  std::string prefix;
  if (text.starts_with('<')) {
    const auto close = text.find('>');
    if (close != std::string_view::npos) {
      const auto iri = text.substr(1, close - 1);
      if (iri != geom::kCrs84Uri) prefix = "<" + std::string(iri) + "> ";
      text = trim(text.substr(close + 1));
    }
  }
  const auto collapsed = collapse_whitespace(text);
  std::string body;
  for (std::size_t i = 0; i < collapsed.size(); ++i) {
    const char c = collapsed[i];
    if (c == ' ') {
      const bool after_punct = !body.empty() && (body.back() == '(' || body.back() == ')' || body.back() == ',');
      const bool before_punct =
          i + 1 < collapsed.size() && (collapsed[i + 1] == '(' || collapsed[i + 1] == ')' || collapsed[i + 1] == ',');
      if (after_punct || before_punct) continue;
    }
    body += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  if (body.empty() && !prefix.empty()) prefix.pop_back();
  return prefix + body;
}

namespace {

class GmlCanonicalizer {
 public:
  std::string run(const xml::Element& root) { return element(root, true); }

 private:
  std::string prefix_for(const std::string& ns) {
    if (ns.empty()) return "";
    if (ns == geom::kGmlNamespace) return "gml";
    auto it = prefixes_.find(ns);
    if (it == prefixes_.end()) {
      it = prefixes_.emplace(ns, "ns" + std::to_string(prefixes_.size())).first;
      order_.push_back(ns);
    }
    return it->second;
  }

  std::string qualified(const std::string& ns, const std::string& local) {
    const auto p = prefix_for(ns);
    if (ns == geom::kGmlNamespace) uses_gml_ = true;
    return p.empty() ? local : p + ":" + local;
  }

  std::string element(const xml::Element& e, bool is_root) {
    const auto name = qualified(e.ns, e.local);
    std::vector<std::pair<std::string, std::string>> attrs;
    for (const auto& a : e.attributes) attrs.emplace_back(qualified(a.ns, a.local), a.value);
    std::sort(attrs.begin(), attrs.end());
    std::string inner;
    for (const auto& c : e.children) inner += element(c, false);
    inner += xml::escape_text(collapse_whitespace(e.text));

    std::string open = "<" + name;
    if (is_root) {
      std::vector<std::pair<std::string, std::string>> decls;
      if (uses_gml_) decls.emplace_back("xmlns:gml", std::string(geom::kGmlNamespace));
      for (const auto& ns : order_) decls.emplace_back("xmlns:" + prefixes_.at(ns), ns);
      for (const auto& [k, v] : decls) open += " " + k + "=\"" + xml::escape_attribute(v) + "\"";
    }
    for (const auto& [k, v] : attrs) open += " " + k + "=\"" + xml::escape_attribute(v) + "\"";
    if (inner.empty()) return open + "/>";
    return open + ">" + inner + "</" + name + ">";
  }

  std::map<std::string, std::string> prefixes_;
  std::vector<std::string> order_;
  bool uses_gml_ = false;
};

}  // namespace

std::string normalize_gml(std::string_view text) {
  if (trim(text).empty()) return "";
  return GmlCanonicalizer().run(xml::parse(text));
}

namespace {

const std::string kWkt = rdf::geo("wktLiteral");
const std::string kGml = rdf::geo("gmlLiteral");

bool is_numeric_datatype(const std::string& dt) {
  static const char* const kTypes[] = {"integer",         "decimal",         "double",       "float",
                                       "int",             "long",            "short",        "byte",
                                       "nonNegativeInteger", "positiveInteger", "negativeInteger",
                                       "nonPositiveInteger", "unsignedInt",   "unsignedLong", "unsignedShort",
                                       "unsignedByte"};
  return std::any_of(std::begin(kTypes), std::end(kTypes), [&](const char* t) { return dt == rdf::xsd(t); });
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.starts_with('+')) text.remove_prefix(1);
  if (text == "INF") return HUGE_VAL;
  if (text == "-INF") return -HUGE_VAL;
  double v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) return std::nullopt;
  return v;
}

bool numbers_close(double expected, double received, double tolerance) {
  if (std::isinf(expected) || std::isinf(received)) return expected == received;
  return std::fabs(expected - received) <= tolerance * std::max(1.0, std::fabs(expected));
}

std::optional<bool> boolean_value(std::string_view lexical) {
  lexical = trim(lexical);
  if (lexical == "true" || lexical == "1") return true;
  if (lexical == "false" || lexical == "0") return false;
  return std::nullopt;
}

bool same_gml(const std::string& a, const std::string& b) {
  try {
    return normalize_gml(a) == normalize_gml(b);
  } catch (const std::exception&) {
    return a == b;
  }
}

}  // namespace

bool terms_equivalent(const Term& expected, const Term& received, double tolerance) {
  if (expected.kind != received.kind) return false;
  switch (expected.kind) {
    case TermKind::Iri: return expected.value == received.value;
    case TermKind::Blank: return true;  // labels are local to a result set
    case TermKind::Literal: break;
  }
  if (is_numeric_datatype(expected.datatype) && is_numeric_datatype(received.datatype)) {
    const auto a = parse_number(expected.value);
    const auto b = parse_number(received.value);
    return a && b ? numbers_close(*a, *b, tolerance) : expected.value == received.value;
  }
  if (expected.datatype != received.datatype || expected.lang != received.lang) return false;
  if (expected.datatype == kWkt) return normalize_wkt(expected.value) == normalize_wkt(received.value);
  if (expected.datatype == kGml) return same_gml(expected.value, received.value);
  if (expected.datatype == rdf::xsd("boolean")) {
    const auto a = boolean_value(expected.value);
    const auto b = boolean_value(received.value);
    if (a && b) return *a == *b;
  }
  return expected.value == received.value;
}

namespace {

// The lone binding of a one-row, one-value result.
std::optional<Term> single_value(const QueryOutcome& outcome) {
  if (outcome.kind() != OutcomeKind::Solutions) return std::nullopt;
  const auto& s = outcome.solutions();
  if (s.rows.size() != 1 || s.rows.front().size() != 1) return std::nullopt;
  return s.rows.front().begin()->second;
}

std::optional<geom::Geometry> geometry_of(const Term& t) {
  if (t.kind != TermKind::Literal) return std::nullopt;
  try {
    if (t.datatype == kWkt) return geom::parse_wkt(t.value).parsed;
    if (t.datatype == kGml) return geom::parse_gml(t.value).parsed;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

bool same_variables(const SolutionSequence& a, const SolutionSequence& b) {
  auto x = a.variables;
  auto y = b.variables;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

bool rows_equivalent(const results::Row& expected, const results::Row& received, double tolerance) {
  if (expected.size() != received.size()) return false;
  for (const auto& [var, term] : expected) {
    const auto it = received.find(var);
    if (it == received.end() || !terms_equivalent(term, it->second, tolerance)) return false;
  }
  return true;
}

// Perfect matching between expected and received rows (Kuhn's algorithm).
bool multiset_equivalent(const std::vector<results::Row>& expected, const std::vector<results::Row>& received,
                         double tolerance) {
  if (expected.size() != received.size()) return false;
  const auto n = expected.size();
  std::vector<std::vector<std::size_t>> edges(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rows_equivalent(expected[i], received[j], tolerance)) edges[i].push_back(j);
  std::vector<std::ptrdiff_t> owner(n, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (const auto j : edges[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]))) {
        owner[j] = static_cast<std::ptrdiff_t>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (edges[i].empty()) return false;
    seen.assign(n, 0);
    if (!augment(i)) return false;
  }
  return true;
}

bool matches(const Answer& alternative, const catalog::AnswerSpec& spec, const QueryOutcome& outcome) {
  switch (spec.kind) {
    case CheckerKind::Boolean: {
      std::string received;
      if (outcome.kind() == OutcomeKind::Boolean) {
        received = outcome.boolean() ? "true" : "false";
      } else {
        const auto v = single_value(outcome);
        if (!v || v->kind != TermKind::Literal) return false;
        received = trim(v->value);
      }
      return received == std::get<std::string>(alternative);
    }
    case CheckerKind::Numeric: {
      const auto v = single_value(outcome);
      if (!v || v->kind != TermKind::Literal) return false;
      const auto n = parse_number(v->value);
      return n && numbers_close(std::get<double>(alternative), *n, spec.tolerance);
    }
    case CheckerKind::LiteralNormalized: {
      const auto v = single_value(outcome);
      return v && terms_equivalent(std::get<Term>(alternative), *v, spec.tolerance);
    }
    case CheckerKind::GeometrySemantic: {
      const auto v = single_value(outcome);
      if (!v) return false;
      const auto received = geometry_of(*v);
      const auto expected = geometry_of(std::get<Term>(alternative));
      if (!received || !expected) return false;
      try {
        return geom::geometry_equals(*expected, *received, spec.tolerance);
      } catch (const std::exception&) {
        return false;
      }
    }
    case CheckerKind::OrderedList:
    case CheckerKind::UnorderedSet: {
      if (outcome.kind() != OutcomeKind::Solutions) return false;
      const auto& expected = std::get<SolutionSequence>(alternative);
      const auto& received = outcome.solutions();
      if (!same_variables(expected, received)) return false;
      if (spec.kind == CheckerKind::UnorderedSet)
        return multiset_equivalent(expected.rows, received.rows, spec.tolerance);
      if (expected.rows.size() != received.rows.size()) return false;
      for (std::size_t i = 0; i < expected.rows.size(); ++i)
        if (!rows_equivalent(expected.rows[i], received.rows[i], spec.tolerance)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

TestResult check(const catalog::TestCase& test, const QueryOutcome& outcome, double elapsed_ms) {
  TestResult r;
  r.test_id = test.id;
  r.received = results::describe(outcome);
  r.elapsed_ms = elapsed_ms;
  if (outcome.is_error()) {
    r.verdict = Verdict::Error;
    return r;
  }
  for (std::size_t i = 0; i < test.answer.alternatives.size(); ++i) {
    if (matches(test.answer.alternatives[i], test.answer, outcome)) {
      r.verdict = Verdict::Correct;
      r.matched_alternative = i;
      return r;
    }
  }
  r.verdict = Verdict::Incorrect;
  return r;
}

}  // namespace gsb::checker
