#pragma once

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gsb/rational.hpp"
#include "gsb/rdf.hpp"
#include "gsb/results.hpp"

namespace gsb::catalog {

inline constexpr int kRequirementCount = 30;
// Documentation of GML profiles; not testable, credited by the scorer.
inline constexpr int kUntestedRequirement = 17;
inline constexpr std::size_t kExpectedTestCount = 206;

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Extension { CORE, TOP, GEOEXT, GTOP, RDFSE, QRW };

inline constexpr Extension kExtensions[] = {Extension::CORE,  Extension::TOP,   Extension::GEOEXT,
                                            Extension::GTOP,  Extension::RDFSE, Extension::QRW};

Extension extension_of(int requirement);
std::string_view extension_name(Extension e);
// Throws CatalogError for an unknown name.
Extension extension_from_name(std::string_view name);

// Number of tests each requirement must have (index 1..30; 0 unused).
int expected_test_count(int requirement);

enum class CheckerKind { Boolean, Numeric, LiteralNormalized, GeometrySemantic, OrderedList, UnorderedSet };

std::string_view checker_name(CheckerKind k);
CheckerKind checker_from_name(std::string_view name);

// One acceptable answer. Boolean specs hold lexical forms ("true", "1"),
// numeric specs a number, literal/geometry specs a term and list specs a
// solution sequence.
using Answer = std::variant<std::string, double, rdf::Term, results::SolutionSequence>;

struct AnswerSpec {
  CheckerKind kind = CheckerKind::Boolean;
  double tolerance = 1e-6;  // relative for numbers, degrees for geometries
  std::vector<Answer> alternatives;
};

struct TestCase {
  std::string id;
  int requirement = 0;
  Extension extension = Extension::CORE;
  std::string group;          // function or property under test; empty when the requirement has one test
  std::string serialization;  // "wkt", "gml", "wkt-gml", ...; empty when not applicable
  std::string query_file;     // relative to the catalog directory
  std::string query;
  AnswerSpec answer;
  std::string answers_file;  // relative path when list answers live outside the manifest
  Rational weight;           // share of the requirement
};

struct Catalog {
  std::vector<TestCase> tests;

  const TestCase& find(std::string_view id) const;
  std::size_t count(int requirement) const;
};

// The catalog as authored in code, with answers derived from the dataset and
// the geometry functions.
Catalog builtin_catalog();

// Directory of the shipped manifest (catalog.json plus queries/ and answers/).
std::filesystem::path default_catalog_dir();

// Reads catalog.json and inlines query and answer files. Throws CatalogError
// for a missing file, a duplicate id or a requirement whose weights do not sum to 1.
Catalog load_catalog(const std::filesystem::path& dir);

// Writes catalog.json, queries/*.rq and answers/*.json under `dir`.
void export_catalog(const Catalog& catalog, const std::filesystem::path& dir);

// Empty when the catalog satisfies the count table and weight rules.
std::vector<std::string> validate_catalog(const Catalog& catalog);

struct Selection {
  std::set<int> requirements;
  std::set<Extension> extensions;

  bool empty() const { return requirements.empty() && extensions.empty(); }
};

// Tests matching any requirement or extension in the filter, in catalog
// order. An empty filter selects everything. Throws CatalogError when nothing
// is selected.
Catalog select(const Catalog& catalog, const Selection& filter);

// "1,4-6,21-24" -> {1,4,5,6,21,...}. Throws CatalogError on bad syntax or range.
std::set<int> parse_requirement_list(std::string_view text);

nlohmann::json answer_to_json(const Answer& answer, CheckerKind kind);
Answer answer_from_json(const nlohmann::json& j, CheckerKind kind);

}  // namespace gsb::catalog
