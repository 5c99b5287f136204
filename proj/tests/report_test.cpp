#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gsb/catalog.hpp"
#include "gsb/report.hpp"

namespace gsb {
namespace {

using catalog::Extension;
using checker::TestResult;
using checker::Verdict;
using report::Classification;

const catalog::Catalog& builtin() {
  static const auto c = catalog::builtin_catalog();
  return c;
}

// One result per catalog test; `correct` decides the verdict.
template <typename Pred>
std::vector<TestResult> results_where(Pred correct) {
  std::vector<TestResult> out;
  for (const auto& t : builtin().tests) {
    TestResult r;
    r.test_id = t.id;
    r.verdict = correct(t) ? Verdict::Correct : Verdict::Incorrect;
    if (r.verdict == Verdict::Correct) r.matched_alternative = 0;
    r.received = r.verdict == Verdict::Correct ? "ok" : "wrong";
    r.elapsed_ms = 2.5;
    out.push_back(r);
  }
  return out;
}

const std::set<int> kBaselineRequirements = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 14, 15, 18, 25, 26, 27};

report::ComplianceReport score(const std::vector<TestResult>& rs) { return report::score(builtin(), rs, "sys", "t0"); }

TEST(Score, AllCorrect) {
  const auto r = score(results_where([](const auto&) { return true; }));
  EXPECT_EQ(r.correct, 206);
  EXPECT_EQ(r.total, 206);
  EXPECT_EQ(r.compliance, Rational(1));
  EXPECT_EQ(r.compliance_percent(), "100.00");
  EXPECT_EQ(report::exit_code(r), report::kExitCompliant);
  for (const auto& e : r.extensions) EXPECT_EQ(e.classification, Classification::Full);
}

TEST(Score, BaselineLine) {
  const auto r = score(results_where([](const auto& t) { return kBaselineRequirements.contains(t.requirement); }));
  EXPECT_EQ(r.correct, 46);
  EXPECT_EQ(r.compliance, Rational(17, 30));
  EXPECT_EQ(r.compliance_percent(), "56.67");
  EXPECT_EQ(report::exit_code(r), report::kExitNonCompliant);
  const auto classes = report::classify_extensions(r);
  EXPECT_EQ(classes.at(Extension::CORE), Classification::Full);
  EXPECT_EQ(classes.at(Extension::TOP), Classification::Full);
  EXPECT_EQ(classes.at(Extension::GEOEXT), Classification::Partial);
  EXPECT_EQ(classes.at(Extension::GTOP), Classification::None);
  EXPECT_EQ(classes.at(Extension::RDFSE), Classification::Full);
  EXPECT_EQ(classes.at(Extension::QRW), Classification::None);
}

TEST(Score, BaselineWithoutEntailmentLine) {
  const auto r = score(results_where(
      [](const auto& t) { return kBaselineRequirements.contains(t.requirement) && t.requirement < 25; }));
  EXPECT_EQ(r.correct, 40);
  EXPECT_EQ(r.compliance_percent(), "46.67");
}

TEST(Score, SingleTopologySubTestPlusAutoCredit) {
  const auto r = score(results_where([](const auto& t) { return t.id == "req4-sfEquals"; }));
  EXPECT_EQ(r.correct, 1);
  EXPECT_EQ(r.compliance, Rational(1, 30) + Rational(1, 30) * Rational(1, 8));
  EXPECT_EQ(r.compliance_percent(), "3.75");
}

TEST(Score, NothingCorrectMeansNoAutoCredit) {
  const auto r = score(results_where([](const auto&) { return false; }));
  EXPECT_EQ(r.correct, 0);
  EXPECT_EQ(r.compliance_percent(), "0.00");
  EXPECT_EQ(report::exit_code(r), report::kExitNonCompliant);
  for (const auto& e : r.extensions) EXPECT_EQ(e.classification, Classification::None);
}

TEST(Score, ErrorsCountAsIncorrect) {
  auto rs = results_where([](const auto&) { return true; });
  rs.front().verdict = Verdict::Error;
  rs.front().matched_alternative.reset();
  const auto r = score(rs);
  EXPECT_EQ(r.correct, 205);
  EXPECT_EQ(r.compliance, Rational(29, 30));
}

TEST(Score, RejectsMissingDuplicateAndUnknownResults) {
  auto rs = results_where([](const auto&) { return true; });
  auto missing = rs;
  missing.pop_back();
  EXPECT_THROW(score(missing), report::ReportError);
  auto duplicate = rs;
  duplicate.push_back(rs.front());
  EXPECT_THROW(score(duplicate), report::ReportError);
  auto unknown = rs;
  unknown.back().test_id = "req99-nope";
  EXPECT_THROW(score(unknown), report::ReportError);
}

TEST(Properties, MonotoneUnderSingleFlips) {
  std::mt19937 rng(5);
  for (int round = 0; round < 20; ++round) {
    auto rs = results_where([&](const auto&) { return std::bernoulli_distribution(0.4)(rng); });
    const auto before = score(rs).compliance;
    std::vector<std::size_t> wrong;
    for (std::size_t i = 0; i < rs.size(); ++i)
      if (rs[i].verdict != Verdict::Correct) wrong.push_back(i);
    if (wrong.empty()) continue;
    auto& flip = rs[wrong[std::uniform_int_distribution<std::size_t>(0, wrong.size() - 1)(rng)]];
    flip.verdict = Verdict::Correct;
    flip.matched_alternative = 0;
    EXPECT_GE(score(rs).compliance, before);
  }
}

TEST(Properties, PermutationInvariant) {
  std::mt19937 rng(6);
  auto rs = results_where([&](const auto&) { return std::bernoulli_distribution(0.5)(rng); });
  const auto reference = report::to_json(score(rs)).dump();
  for (int i = 0; i < 10; ++i) {
    std::shuffle(rs.begin(), rs.end(), rng);
    EXPECT_EQ(report::to_json(score(rs)).dump(), reference);
  }
}

TEST(Json, SchemaAndRoundTrip) {
  const auto r = score(results_where([](const auto& t) { return kBaselineRequirements.contains(t.requirement); }));
  const auto j = report::to_json(r);
  EXPECT_EQ(j["system"], "sys");
  EXPECT_EQ(j["totals"]["correct"], 46);
  EXPECT_EQ(j["totals"]["total"], 206);
  EXPECT_EQ(j["totals"]["compliance_percent"], "56.67");
  EXPECT_EQ(j["requirements"].size(), 30u);
  EXPECT_EQ(j["extensions"].size(), 6u);
  const auto& first = j["requirements"][0]["tests"][0];
  for (const auto* key : {"id", "verdict", "elapsed_ms", "matched_alternative", "received"})
    EXPECT_TRUE(first.contains(key)) << key;

  const auto back = report::from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(report::to_json(back).dump(), j.dump());
  EXPECT_EQ(back.compliance, r.compliance);
  EXPECT_EQ(back.correct, r.correct);
}

TEST(Markdown, MirrorsSummaryTables) {
  const auto r = score(results_where([](const auto& t) { return kBaselineRequirements.contains(t.requirement); }));
  const auto md = report::render(r, report::Format::Markdown);
  EXPECT_NE(md.find("| sys | 46 | 56.67 |"), std::string::npos) << md;
  EXPECT_NE(md.find("| sys | Full | Full | Partial | None | Full | None |"), std::string::npos) << md;
  EXPECT_EQ(report::format_from_name("md"), report::Format::Markdown);
  EXPECT_THROW(report::format_from_name("pdf"), report::ReportError);
}

TEST(Rational, HalfUpRounding) {
  EXPECT_EQ((Rational(17, 30) * Rational(100)).to_fixed(2), "56.67");
  EXPECT_EQ((Rational(14, 30) * Rational(100)).to_fixed(2), "46.67");
  EXPECT_EQ(Rational(1, 8).to_fixed(2), "0.13");
  EXPECT_EQ(Rational(1, 200).to_fixed(2), "0.01");
  EXPECT_EQ(Rational(1, 201).to_fixed(2), "0.00");
  EXPECT_EQ(Rational(3).to_fixed(2), "3.00");
  EXPECT_EQ(Rational::parse("7/8"), Rational(7, 8));
}

}  // namespace
}  // namespace gsb
