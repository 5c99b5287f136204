// geosparql-bench: run the compliance suite against an endpoint, emit the
// dataset, inspect the catalog or serve the reference endpoint.

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "gsb/catalog.hpp"
#include "gsb/dataset.hpp"
#include "gsb/fixture.hpp"
#include "gsb/report.hpp"
#include "gsb/runner.hpp"

namespace {

using namespace gsb;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

catalog::Catalog catalog_from(const std::string& dir) {
  return dir.empty() ? catalog::builtin_catalog() : catalog::load_catalog(dir);
}

volatile std::sig_atomic_t g_stop = 0;

void handle_signal(int) { g_stop = 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compliance harness for GeoSPARQL endpoints"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Load the dataset into an endpoint, run the tests and score them");
  runner::RunConfig config;
  std::string requirements;
  std::string extensions;
  std::string output_dir = "results";
  std::string formats = "json,markdown";
  std::string run_catalog;
  std::string update_url;
  std::string graph_store_url;
  run->add_option("--endpoint", config.endpoint.query_url, "SPARQL query URL")->required();
  run->add_option("--update", update_url, "SPARQL Update URL (fallback loading)");
  run->add_option("--graph-store", graph_store_url, "Graph Store Protocol URL (preferred loading)");
  run->add_option("--graph", config.endpoint.target_graph, "Graph IRI the dataset is loaded into")
      ->capture_default_str();
  run->add_option("--timeout", config.endpoint.timeout_seconds, "Per-request timeout in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--requirements", requirements, "Requirement filter, e.g. 1,4-6,21-24");
  run->add_option("--extensions", extensions, "Extension filter, e.g. CORE,GTOP");
  run->add_option("--output-dir", output_dir, "Directory for report.json and report.md")->capture_default_str();
  run->add_option("--format", formats, "Report formats: json, markdown or both")->capture_default_str();
  run->add_option("--parallel", config.parallelism, "Requests in flight")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_flag("--keep-data", config.keep_data, "Leave the dataset graph in place afterwards");
  run->add_option("--catalog", run_catalog, "Catalog directory (default: the built-in catalog)");
  run->add_option("--label", config.label, "System name used in the report");

  // dataset
  auto* dataset_cmd = app.add_subcommand("dataset", "Benchmark dataset");
  dataset_cmd->require_subcommand(1);
  auto* emit = dataset_cmd->add_subcommand("emit", "Write the dataset with its schema");
  std::string emit_format = "ttl";
  std::string emit_output;
  emit->add_option("--format", emit_format, "ttl or rdfxml")->capture_default_str();
  std::string emit_dir;
  emit->add_option("--output,-o", emit_output, "Output file (default: standard output)");
  emit->add_option("--output-dir", emit_dir, "Write dataset.ttl, dataset.rdf and ontology.ttl here instead")
      ->excludes("--output");

  // catalog
  auto* catalog_cmd = app.add_subcommand("catalog", "Test catalog");
  catalog_cmd->require_subcommand(1);
  std::string catalog_dir;
  auto* list = catalog_cmd->add_subcommand("list", "List tests");
  std::string list_extension;
  list->add_option("--extension", list_extension, "Only tests of this extension");
  list->add_option("--catalog", catalog_dir, "Catalog directory (default: built-in)");
  auto* validate = catalog_cmd->add_subcommand("validate", "Check counts, weights and answers");
  validate->add_option("--catalog", catalog_dir, "Catalog directory (default: built-in)");
  auto* export_cmd = catalog_cmd->add_subcommand("export", "Write catalog.json, queries/ and answers/");
  std::string export_dir;
  export_cmd->add_option("--output,-o", export_dir, "Target directory")->required();

  // fixture
  auto* fixture_cmd = app.add_subcommand("fixture", "Reference endpoint");
  fixture_cmd->require_subcommand(1);
  auto* serve = fixture_cmd->add_subcommand("serve", "Serve a fixture profile over HTTP");
  std::string profile_name = "full";
  std::string host = "127.0.0.1";
  int port = 8890;
  bool unknown_empty = false;
  bool preload = false;
  serve->add_option("--profile", profile_name, "baseline_no_rdfs, baseline or full")->capture_default_str();
  serve->add_option("--host", host, "Interface to bind")->capture_default_str();
  serve->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str()->check(CLI::Range(0, 65535));
  serve->add_flag("--unknown-function-empty", unknown_empty,
                  "Answer unsupported function calls with no solutions instead of HTTP 400");
  serve->add_flag("--preload", preload, "Start with the dataset already loaded into the default graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : report::kExitHarnessFailure;
  }

  try {
    if (*run) {
      if (!update_url.empty()) config.endpoint.update_url = update_url;
      if (!graph_store_url.empty()) config.endpoint.graph_store_url = graph_store_url;
      const char* user = std::getenv("GSB_ENDPOINT_USER");
      const char* password = std::getenv("GSB_ENDPOINT_PASSWORD");
      if (user) config.endpoint.auth = client::Credentials{user, password ? password : ""};
      if (!requirements.empty()) config.selection.requirements = catalog::parse_requirement_list(requirements);
      for (const auto& e : split_list(extensions)) config.selection.extensions.insert(catalog::extension_from_name(e));
      config.formats.clear();
      for (const auto& f : split_list(formats)) config.formats.insert(report::format_from_name(f));
      config.output_dir = output_dir;
      const auto result =
          runner::run_benchmark(config, catalog_from(run_catalog), dataset::benchmark_dataset().all_triples(), std::cout);
      for (const auto& p : result.written) std::cout << "wrote " << p.string() << "\n";
      return result.exit_code;
    }

    if (*emit && !emit_dir.empty()) {
      const auto& ds = dataset::benchmark_dataset();
      std::filesystem::create_directories(emit_dir);
      write_file(std::filesystem::path(emit_dir) / "dataset.ttl", dataset::emit(ds.all_triples(), dataset::Format::Turtle));
      write_file(std::filesystem::path(emit_dir) / "dataset.rdf", dataset::emit(ds.all_triples(), dataset::Format::RdfXml));
      write_file(std::filesystem::path(emit_dir) / "ontology.ttl", dataset::emit(ds.schema_triples, dataset::Format::Turtle));
      return 0;
    }

    if (*emit) {
      const auto text = dataset::emit(dataset::benchmark_dataset().all_triples(), dataset::format_from_name(emit_format));
      if (emit_output.empty()) std::cout << text;
      else write_file(emit_output, text);
      return 0;
    }

    if (*list) {
      const auto cat = catalog_from(catalog_dir);
      std::optional<catalog::Extension> only;
      if (!list_extension.empty()) only = catalog::extension_from_name(list_extension);
      for (const auto& t : cat.tests) {
        if (only && t.extension != *only) continue;
        std::cout << t.id << "\t" << t.requirement << "\t" << catalog::extension_name(t.extension) << "\t"
                  << catalog::checker_name(t.answer.kind) << "\t" << t.weight.str() << "\n";
      }
      return 0;
    }

    if (*validate) {
      const auto cat = catalog_from(catalog_dir);
      const auto errors = catalog::validate_catalog(cat);
      for (const auto& e : errors) std::cout << "error: " << e << "\n";
      if (!errors.empty()) return 1;
      std::cout << "catalog valid: " << cat.tests.size() << " tests\n";
      return 0;
    }

    if (*export_cmd) {
      catalog::export_catalog(catalog::builtin_catalog(), export_dir);
      std::cout << "exported to " << export_dir << "\n";
      return 0;
    }

    if (*serve) {
      auto profile = fixture::Profile::named(profile_name);
      profile.unknown_function_empty = unknown_empty;
      fixture::Server server(profile);
      if (preload) server.store().put_graph("", dataset::benchmark_dataset().all_triples());
      const int bound = server.start(host, port);
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      std::cout << "serving profile " << profile.name << " on http://" << host << ":" << bound << "\n"
                << "  query:       " << server.query_url() << "\n"
                << "  graph store: " << server.data_url() << "\n"
                << "  update:      " << server.update_url() << std::endl;
      // httplib's stop() is not async-signal-safe, so the handler only sets a flag.
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));
      server.stop();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return report::kExitHarnessFailure;
  }
  return 0;
}
