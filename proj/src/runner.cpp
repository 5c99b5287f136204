#include "gsb/runner.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>

#include "gsb/checker.hpp"

namespace gsb::runner {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunOutcome run_benchmark(const RunConfig& config, const catalog::Catalog& full_catalog,
                         const std::vector<rdf::Triple>& dataset, std::ostream& log) {
  RunOutcome out;
  auto fail = [&](const std::string& message) {
    out.exit_code = report::kExitHarnessFailure;
    out.summary = "harness failure: " + message;
    log << out.summary << "\n";
    return out;
  };
  if (config.parallelism < 1) return fail("parallelism must be at least 1");

  catalog::Catalog selected;
  try {
    selected = catalog::select(full_catalog, config.selection);
  } catch (const catalog::CatalogError& e) {
    return fail(e.what());
  }

  log << "loading " << dataset.size() << " triples into <" << config.endpoint.target_graph << ">\n";
  const auto load = client::load_dataset(config.endpoint, dataset);
  if (!load.ok) return fail("dataset load failed: " + results::describe(results::QueryOutcome{*load.error}));
  log << "loaded via " << load.method << "; running " << selected.tests.size() << " tests\n";

  std::vector<std::string> queries;
  for (const auto& t : selected.tests) queries.push_back(t.query);
  std::vector<double> elapsed;
  const auto outcomes = client::execute_all(config.endpoint, queries, config.parallelism, &elapsed);

  std::vector<checker::TestResult> results;
  for (std::size_t i = 0; i < selected.tests.size(); ++i)
    results.push_back(checker::check(selected.tests[i], outcomes[i], elapsed[i]));

  if (!config.keep_data) {
    if (const auto err = client::drop_dataset(config.endpoint))
      log << "warning: could not drop the dataset graph: " << err->message << "\n";
  }

  const auto label = config.label.empty() ? config.endpoint.query_url : config.label;
  auto rep = report::score(selected, results, label, utc_timestamp());
  out.exit_code = report::exit_code(rep);
  out.summary = label + ": " + std::to_string(rep.correct) + "/" + std::to_string(rep.total) + " correct, " +
                rep.compliance_percent() + "% compliance";

  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    for (const auto format : config.formats) {
      const auto path = config.output_dir / (format == report::Format::Json ? "report.json" : "report.md");
      std::ofstream file(path, std::ios::binary);
      file << report::render(rep, format);
      if (!file) return fail("cannot write " + path.string());
      out.written.push_back(path);
    }
  }
  log << out.summary << "\n";
  out.report = std::move(rep);
  return out;
}

}  // namespace gsb::runner
