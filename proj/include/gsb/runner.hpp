#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gsb/catalog.hpp"
#include "gsb/client.hpp"
#include "gsb/rdf.hpp"
#include "gsb/report.hpp"

namespace gsb::runner {

struct RunConfig {
  client::EndpointConfig endpoint;
  catalog::Selection selection;
  std::filesystem::path output_dir;  // empty: write nothing
  std::set<report::Format> formats{report::Format::Json, report::Format::Markdown};
  std::size_t parallelism = 1;
  bool keep_data = false;
  std::string label;  // defaults to the query URL
};

struct RunOutcome {
  std::optional<report::ComplianceReport> report;  // absent when the harness failed
  int exit_code = report::kExitHarnessFailure;
  std::string summary;  // one line, also printed to `log`
  std::vector<std::filesystem::path> written;
};

// Load the dataset, run the selected tests, check, score and write reports.
// A failed load or an invalid selection ends the run with exit code 2;
// failing queries only make their tests incorrect.
RunOutcome run_benchmark(const RunConfig& config, const catalog::Catalog& catalog,
                         const std::vector<rdf::Triple>& dataset, std::ostream& log);

// UTC, "2026-01-31T12:00:00Z".
std::string utc_timestamp();

}  // namespace gsb::runner
