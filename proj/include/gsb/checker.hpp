#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gsb/catalog.hpp"
#include "gsb/rdf.hpp"
#include "gsb/results.hpp"

namespace gsb::checker {

enum class Verdict { Correct, Incorrect, Error };

std::string_view verdict_name(Verdict v);
// Throws std::invalid_argument for an unknown name.
Verdict verdict_from_name(std::string_view name);

struct TestResult {
  std::string test_id;
  Verdict verdict = Verdict::Incorrect;
  std::optional<std::size_t> matched_alternative;  // present iff correct
  std::string received;                            // results::describe snapshot
  double elapsed_ms = 0;

  friend bool operator==(const TestResult&, const TestResult&) = default;
};

// Trimmed, whitespace runs collapsed, no spaces next to '(', ')' or ',',
// keywords upper-cased, a leading CRS84 IRI removed. Numbers are left as written.
std::string normalize_wkt(std::string_view text);

// Canonical XML: GML 3.2 elements under the gml prefix, other namespaces
// under ns0, ns1, ... in order of appearance, attributes sorted, whitespace
// between elements removed. Throws xml::XmlError for malformed input; ""
// maps to "".
std::string normalize_gml(std::string_view text);

// Term equality used for list rows and literal answers. Literals must share a
// datatype; WKT and GML compare by normal form, numbers by value within the
// relative tolerance, booleans by value.
bool terms_equivalent(const rdf::Term& expected, const rdf::Term& received, double tolerance);

TestResult check(const catalog::TestCase& test, const results::QueryOutcome& outcome, double elapsed_ms = 0);

}  // namespace gsb::checker
