#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gsb/catalog.hpp"
#include "gsb/checker.hpp"
#include "gsb/rational.hpp"
#include "json.hpp"

namespace gsb::report {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Classification { Full, Partial, None };

std::string_view classification_name(Classification c);

struct RequirementScore {
  int requirement = 0;
  catalog::Extension extension = catalog::Extension::CORE;
  Rational weight{1, catalog::kRequirementCount};
  Rational fraction;  // of the requirement's tests, by weight
  std::vector<checker::TestResult> tests;
};

struct ExtensionScore {
  catalog::Extension extension = catalog::Extension::CORE;
  Classification classification = Classification::None;
  Rational score;  // mean fraction over the extension's tested requirements
  int correct = 0;
  int total = 0;
};

struct ComplianceReport {
  std::string system_label;
  std::string timestamp;
  int correct = 0;
  int total = 0;
  Rational compliance;  // in [0, 1]
  std::vector<RequirementScore> requirements;  // 1..30, including the untested one
  std::vector<ExtensionScore> extensions;

  // "56.67": percent rounded half-up to two decimals.
  std::string compliance_percent() const { return (compliance * Rational(100)).to_fixed(2); }
};

// Exactly one result per catalog test, in any order. Requirements without
// selected tests score 0; the untested requirement is credited when at least
// one answer is correct. Throws ReportError for missing, duplicate or unknown results.
ComplianceReport score(const catalog::Catalog& catalog, const std::vector<checker::TestResult>& results,
                       std::string system_label, std::string timestamp);

// Full when every test of the extension is correct, None when none is.
// Extensions with no tests in the report are None.
std::map<catalog::Extension, Classification> classify_extensions(const ComplianceReport& report);

nlohmann::ordered_json to_json(const ComplianceReport& report);
// Throws ReportError when `j` is not a report document.
ComplianceReport from_json(const nlohmann::json& j);

enum class Format { Json, Markdown };
// "json" or "markdown"/"md"; throws ReportError otherwise.
Format format_from_name(std::string_view name);
std::string render(const ComplianceReport& report, Format format);

inline constexpr int kExitCompliant = 0;
inline constexpr int kExitNonCompliant = 1;
inline constexpr int kExitHarnessFailure = 2;

int exit_code(const ComplianceReport& report);

}  // namespace gsb::report
