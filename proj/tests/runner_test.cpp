#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gsb/dataset.hpp"
#include "gsb/runner.hpp"
#include "support.hpp"

namespace gsb {
namespace {

using testing_support::LiveFixture;

const catalog::Catalog& builtin() {
  static const auto c = catalog::builtin_catalog();
  return c;
}

runner::RunOutcome run_against(LiveFixture& live, runner::RunConfig config = {}) {
  config.endpoint = live.config;
  config.parallelism = std::max<std::size_t>(config.parallelism, 4);
  std::ostringstream log;
  return runner::run_benchmark(config, builtin(), dataset::benchmark_dataset().all_triples(), log);
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("gsb-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

nlohmann::json without_volatile_fields(nlohmann::json j) {
  j.erase("timestamp");
  for (auto& r : j["requirements"])
    for (auto& t : r["tests"]) t.erase("elapsed_ms");
  return j;
}

struct ProfileLine {
  const char* profile;
  int correct;
  const char* percent;
  int exit_code;
};

void PrintTo(const ProfileLine& line, std::ostream* os) { *os << line.profile; }

class ScoreLine : public ::testing::TestWithParam<ProfileLine> {};

TEST_P(ScoreLine, MatchesTheProfile) {
  const auto& line = GetParam();
  LiveFixture live(line.profile);
  const auto out = run_against(live);
  ASSERT_TRUE(out.report) << out.summary;
  EXPECT_EQ(out.report->correct, line.correct);
  EXPECT_EQ(out.report->total, 206);
  EXPECT_EQ(out.report->compliance_percent(), line.percent);
  EXPECT_EQ(out.exit_code, line.exit_code);
  EXPECT_NE(out.summary.find(std::string(line.percent) + "%"), std::string::npos);
}

INSTANTIATE_TEST_SUITE_P(Profiles, ScoreLine,
                         ::testing::Values(ProfileLine{"full", 206, "100.00", report::kExitCompliant},
                                           ProfileLine{"baseline", 46, "56.67", report::kExitNonCompliant},
                                           ProfileLine{"baseline_no_rdfs", 40, "46.67", report::kExitNonCompliant}),
                         [](const auto& info) { return std::string(info.param.profile); });

TEST(Run, SubsetSelectsAndScoresOnlyThoseTests) {
  LiveFixture live("full");
  runner::RunConfig config;
  config.selection.requirements = {21, 22, 23, 24};
  const auto out = run_against(live, config);
  ASSERT_TRUE(out.report);
  EXPECT_EQ(out.report->correct, 100);
  EXPECT_EQ(out.report->total, 100);
  // Four tested requirements plus the untested one credited: 5/30.
  EXPECT_EQ(out.report->compliance_percent(), "16.67");
}

TEST(Run, SelectionDoesNotChangeVerdicts) {
  LiveFixture live("baseline");
  const auto whole = run_against(live);
  runner::RunConfig config;
  config.selection.extensions = {catalog::Extension::CORE, catalog::Extension::GEOEXT};
  const auto part = run_against(live, config);
  ASSERT_TRUE(whole.report && part.report);
  std::map<std::string, checker::Verdict> verdicts;
  for (const auto& r : whole.report->requirements)
    for (const auto& t : r.tests) verdicts[t.test_id] = t.verdict;
  int seen = 0;
  for (const auto& r : part.report->requirements)
    for (const auto& t : r.tests) {
      EXPECT_EQ(t.verdict, verdicts.at(t.test_id)) << t.test_id;
      ++seen;
    }
  EXPECT_EQ(seen, part.report->total);
  EXPECT_GT(seen, 0);
}

TEST(Run, ReportsAreReproducible) {
  LiveFixture live("baseline");
  runner::RunConfig config;
  config.output_dir = scratch_dir("repro-a");
  const auto first = run_against(live, config);
  config.output_dir = scratch_dir("repro-b");
  config.parallelism = 8;
  const auto second = run_against(live, config);
  ASSERT_EQ(first.written.size(), 2u);
  ASSERT_EQ(second.written.size(), 2u);
  auto read_json = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
  };
  const auto a = read_json(first.written[0].extension() == ".json" ? first.written[0] : first.written[1]);
  const auto b = read_json(second.written[0].extension() == ".json" ? second.written[0] : second.written[1]);
  EXPECT_EQ(without_volatile_fields(a), without_volatile_fields(b));
  EXPECT_EQ(report::to_json(report::from_json(a)), report::to_json(*first.report));
  std::filesystem::remove_all(first.written[0].parent_path());
  std::filesystem::remove_all(second.written[0].parent_path());
}

TEST(Run, DropsTheGraphUnlessAskedToKeepIt) {
  LiveFixture live("full");
  const auto graph = std::string(client::kDefaultGraph);
  run_against(live);
  EXPECT_FALSE(live.server.store().has_graph(graph));
  runner::RunConfig config;
  config.keep_data = true;
  config.selection.requirements = {1};
  run_against(live, config);
  EXPECT_TRUE(live.server.store().has_graph(graph));
}

TEST(Run, HarnessFailuresExitWithTwo) {
  LiveFixture live("full");
  runner::RunConfig config;
  config.endpoint = live.config;
  config.endpoint.graph_store_url.reset();
  config.endpoint.update_url.reset();
  std::ostringstream log;
  auto out = runner::run_benchmark(config, builtin(), dataset::benchmark_dataset().all_triples(), log);
  EXPECT_EQ(out.exit_code, report::kExitHarnessFailure);
  EXPECT_FALSE(out.report);
  EXPECT_NE(log.str().find("harness failure"), std::string::npos);

  config.endpoint = live.config;
  config.selection.requirements = {17};
  out = runner::run_benchmark(config, builtin(), dataset::benchmark_dataset().all_triples(), log);
  EXPECT_EQ(out.exit_code, report::kExitHarnessFailure);
}

TEST(Run, UnreachableQueriesScoreZeroWithoutHarnessFailure) {
  LiveFixture live("full");
  runner::RunConfig config;
  config.endpoint = live.config;
  config.endpoint.query_url = "http://127.0.0.1:1/sparql";
  config.endpoint.timeout_seconds = 2;
  config.selection.requirements = {1, 2, 3};
  std::ostringstream log;
  const auto out = runner::run_benchmark(config, builtin(), dataset::benchmark_dataset().all_triples(), log);
  ASSERT_TRUE(out.report);
  EXPECT_EQ(out.report->correct, 0);
  EXPECT_EQ(out.exit_code, report::kExitNonCompliant);
}

std::pair<int, std::string> shell(const std::string& command) {
  std::string output;
  FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) output.append(buf, n);
  const int status = ::pclose(pipe);
  return {WEXITSTATUS(status), output};
}

TEST(Cli, RunAgainstTheFixture) {
  LiveFixture live("full");
  const auto dir = scratch_dir("cli");
  const auto [code, output] =
      shell(std::string(GSB_CLI_PATH) + " run --endpoint " + live.config.query_url + " --graph-store " +
            *live.config.graph_store_url + " --requirements 1-3,25 --format json --output-dir " + dir.string());
  EXPECT_EQ(code, report::kExitNonCompliant) << output;
  EXPECT_NE(output.find("6/6 correct"), std::string::npos) << output;
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_FALSE(std::filesystem::exists(dir / "report.md"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, CatalogAndDatasetCommands) {
  const std::string cli = GSB_CLI_PATH;
  auto [code, output] = shell(cli + " catalog validate");
  EXPECT_EQ(code, 0);
  EXPECT_NE(output.find("catalog valid: 206 tests"), std::string::npos);
  std::tie(code, output) = shell(cli + " catalog validate --catalog " + std::string(GSB_SOURCE_DIR) + "/data/catalog");
  EXPECT_EQ(code, 0) << output;
  std::tie(code, output) = shell(cli + " catalog list --extension QRW");
  EXPECT_EQ(code, 0);
  EXPECT_EQ(std::count(output.begin(), output.end(), '\n'), 24);
  std::tie(code, output) = shell(cli + " dataset emit --format ttl");
  EXPECT_EQ(code, 0);
  EXPECT_EQ(rdf::parse_turtle(output).size(), dataset::benchmark_dataset().all_triples().size());
  std::tie(code, output) = shell(cli + " run");
  EXPECT_EQ(code, report::kExitHarnessFailure);
  std::tie(code, output) = shell(cli + " run --endpoint http://127.0.0.1:1/sparql --requirements 99");
  EXPECT_EQ(code, report::kExitHarnessFailure);
}

}  // namespace
}  // namespace gsb
