#include "gsb/report.hpp"

#include <algorithm>
#include <sstream>

namespace gsb::report {

using catalog::Extension;
using checker::TestResult;
using checker::Verdict;
using nlohmann::json;
using nlohmann::ordered_json;

std::string_view classification_name(Classification c) {
  switch (c) {
    case Classification::Full: return "Full";
    case Classification::Partial: return "Partial";
    case Classification::None: return "None";
  }
  return "None";
}

namespace {

Classification classification_from_name(std::string_view name) {
  for (const auto c : {Classification::Full, Classification::Partial, Classification::None})
    if (classification_name(c) == name) return c;
  throw ReportError("unknown classification '" + std::string(name) + "'");
}

}  // namespace

ComplianceReport score(const catalog::Catalog& catalog, const std::vector<TestResult>& results,
                       std::string system_label, std::string timestamp) {
  std::map<std::string, const TestResult*> by_id;
  for (const auto& r : results) {
    if (!by_id.emplace(r.test_id, &r).second) throw ReportError("duplicate result for test " + r.test_id);
  }
  ComplianceReport report;
  report.system_label = std::move(system_label);
  report.timestamp = std::move(timestamp);
  for (int req = 1; req <= catalog::kRequirementCount; ++req) {
    RequirementScore rs;
    rs.requirement = req;
    rs.extension = catalog::extension_of(req);
    report.requirements.push_back(std::move(rs));
  }
  for (const auto& t : catalog.tests) {
    const auto it = by_id.find(t.id);
    if (it == by_id.end()) throw ReportError("missing result for test " + t.id);
    auto& rs = report.requirements[static_cast<std::size_t>(t.requirement - 1)];
    const auto& r = *it->second;
    rs.tests.push_back(r);
    ++report.total;
    if (r.verdict == Verdict::Correct) {
      rs.fraction += t.weight;
      ++report.correct;
    }
    by_id.erase(it);
  }
  if (!by_id.empty()) throw ReportError("result for unknown test " + by_id.begin()->first);

  auto& untested = report.requirements[catalog::kUntestedRequirement - 1];
  untested.fraction = report.correct > 0 ? Rational(1) : Rational(0);
  for (const auto& rs : report.requirements) report.compliance += rs.weight * rs.fraction;

  const auto classes = classify_extensions(report);
  for (const auto e : catalog::kExtensions) {
    ExtensionScore es;
    es.extension = e;
    es.classification = classes.at(e);
    int requirements = 0;
    for (const auto& rs : report.requirements) {
      if (rs.extension != e || rs.requirement == catalog::kUntestedRequirement) continue;
      ++requirements;
      es.score += rs.fraction;
      es.total += static_cast<int>(rs.tests.size());
      es.correct += static_cast<int>(
          std::count_if(rs.tests.begin(), rs.tests.end(), [](const auto& r) { return r.verdict == Verdict::Correct; }));
    }
    if (requirements > 0) es.score = es.score / Rational(requirements);
    report.extensions.push_back(es);
  }
  return report;
}

std::map<Extension, Classification> classify_extensions(const ComplianceReport& report) {
  std::map<Extension, Classification> out;
  for (const auto e : catalog::kExtensions) {
    int correct = 0;
    int total = 0;
    for (const auto& rs : report.requirements) {
      if (rs.extension != e) continue;
      for (const auto& t : rs.tests) {
        ++total;
        if (t.verdict == Verdict::Correct) ++correct;
      }
    }
    out[e] = total > 0 && correct == total ? Classification::Full
             : correct > 0                ? Classification::Partial
                                          : Classification::None;
  }
  return out;
}

ordered_json to_json(const ComplianceReport& report) {
  ordered_json j;
  j["system"] = report.system_label;
  j["timestamp"] = report.timestamp;
  j["totals"] = {{"correct", report.correct},
                 {"total", report.total},
                 {"compliance_percent", report.compliance_percent()},
                 {"compliance", report.compliance.str()}};
  j["extensions"] = ordered_json::array();
  for (const auto& e : report.extensions)
    j["extensions"].push_back({{"id", catalog::extension_name(e.extension)},
                               {"classification", classification_name(e.classification)},
                               {"score", e.score.str()},
                               {"correct", e.correct},
                               {"total", e.total}});
  j["requirements"] = ordered_json::array();
  for (const auto& rs : report.requirements) {
    ordered_json tests = ordered_json::array();
    for (const auto& t : rs.tests) {
      ordered_json tj = {{"id", t.test_id}, {"verdict", checker::verdict_name(t.verdict)}, {"elapsed_ms", t.elapsed_ms}};
      tj["matched_alternative"] = t.matched_alternative ? ordered_json(*t.matched_alternative) : ordered_json(nullptr);
      tj["received"] = t.received;
      tests.push_back(std::move(tj));
    }
    j["requirements"].push_back({{"id", rs.requirement},
                                 {"extension", catalog::extension_name(rs.extension)},
                                 {"weight", rs.weight.str()},
                                 {"fraction", rs.fraction.str()},
                                 {"tests", std::move(tests)}});
  }
  return j;
}

ComplianceReport from_json(const json& j) {
  try {
    ComplianceReport r;
    r.system_label = j.at("system").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    const auto& totals = j.at("totals");
    r.correct = totals.at("correct").get<int>();
    r.total = totals.at("total").get<int>();
    r.compliance = Rational::parse(totals.at("compliance").get<std::string>());
    for (const auto& ej : j.at("extensions")) {
      ExtensionScore e;
      e.extension = catalog::extension_from_name(ej.at("id").get<std::string>());
      e.classification = classification_from_name(ej.at("classification").get<std::string>());
      e.score = Rational::parse(ej.at("score").get<std::string>());
      e.correct = ej.at("correct").get<int>();
      e.total = ej.at("total").get<int>();
      r.extensions.push_back(e);
    }
    for (const auto& rj : j.at("requirements")) {
      RequirementScore rs;
      rs.requirement = rj.at("id").get<int>();
      rs.extension = catalog::extension_from_name(rj.at("extension").get<std::string>());
      rs.weight = Rational::parse(rj.at("weight").get<std::string>());
      rs.fraction = Rational::parse(rj.at("fraction").get<std::string>());
      for (const auto& tj : rj.at("tests")) {
        TestResult t;
        t.test_id = tj.at("id").get<std::string>();
        t.verdict = checker::verdict_from_name(tj.at("verdict").get<std::string>());
        t.elapsed_ms = tj.at("elapsed_ms").get<double>();
        if (!tj.at("matched_alternative").is_null()) t.matched_alternative = tj["matched_alternative"].get<std::size_t>();
        t.received = tj.at("received").get<std::string>();
        rs.tests.push_back(std::move(t));
      }
      r.requirements.push_back(std::move(rs));
    }
    return r;
  } catch (const ReportError&) {
    throw;
  } catch (const std::exception& e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  }
}

Format format_from_name(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "markdown" || name == "md") return Format::Markdown;
  throw ReportError("unknown report format '" + std::string(name) + "'");
}

namespace {

std::string one_line(std::string text, std::size_t limit) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  std::replace(text.begin(), text.end(), '|', '/');
  std::replace(text.begin(), text.end(), '`', '\'');
  if (text.size() > limit) text = text.substr(0, limit) + "...";
  return text;
}

std::string render_markdown(const ComplianceReport& r) {
  std::ostringstream out;
  out << "# GeoSPARQL compliance: " << r.system_label << "\n\n";
  if (!r.timestamp.empty()) out << "Run at " << r.timestamp << ".\n\n";
  out << "| System | Correct answers | Compliance (%) |\n|---|---:|---:|\n";
  out << "| " << r.system_label << " | " << r.correct << " | " << r.compliance_percent() << " |\n\n";

  out << "| System |";
  for (const auto& e : r.extensions) out << " " << catalog::extension_name(e.extension) << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < r.extensions.size(); ++i) out << "---|";
  out << "\n| " << r.system_label << " |";
  for (const auto& e : r.extensions) out << " " << classification_name(e.classification) << " |";
  out << "\n\n## Requirements\n\n| Requirement | Extension | Score | Correct tests |\n|---:|---|---:|---:|\n";
  for (const auto& rs : r.requirements) {
    const auto correct = std::count_if(rs.tests.begin(), rs.tests.end(),
                                       [](const auto& t) { return t.verdict == Verdict::Correct; });
    out << "| " << rs.requirement << " | " << catalog::extension_name(rs.extension) << " | "
        << (rs.fraction * Rational(100)).to_fixed(2) << "% | ";
    if (rs.requirement == catalog::kUntestedRequirement) out << "credited |\n";
    else out << correct << "/" << rs.tests.size() << " |\n";
  }

  bool header = false;
  for (const auto& rs : r.requirements)
    for (const auto& t : rs.tests) {
      if (t.verdict == Verdict::Correct) continue;
      if (!header) {
        out << "\n## Failed tests\n\n| Test | Verdict | Received |\n|---|---|---|\n";
        header = true;
      }
      out << "| " << t.test_id << " | " << checker::verdict_name(t.verdict) << " | `" << one_line(t.received, 120)
          << "` |\n";
    }
  return out.str();
}

}  // namespace

std::string render(const ComplianceReport& report, Format format) {
  if (format == Format::Json) return to_json(report).dump(2) + "\n";
  return render_markdown(report);
}

int exit_code(const ComplianceReport& report) {
  return report.compliance_percent() == "100.00" ? kExitCompliant : kExitNonCompliant;
}

}  // namespace gsb::report
