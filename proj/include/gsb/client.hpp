#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsb/rdf.hpp"
#include "gsb/results.hpp"

namespace gsb::client {

inline constexpr std::string_view kDefaultGraph = "http://example.org/geosparql-benchmark";
inline constexpr std::size_t kInsertBatchSize = 500;

struct Credentials {
  std::string user;
  std::string password;
};

struct EndpointConfig {
  std::string query_url;
  std::optional<std::string> update_url;
  std::optional<std::string> graph_store_url;
  std::optional<Credentials> auth;
  double timeout_seconds = 30;
  std::string target_graph{kDefaultGraph};
};

struct LoadResult {
  bool ok = false;
  std::string method;  // "graph-store" or "update"
  std::size_t triples = 0;
  std::optional<results::QueryError> error;
  std::optional<std::size_t> failed_batch;  // 0-based, update loading only
};

// Replaces the target graph with `triples`: a Graph Store PUT when a graph
// store URL is configured, otherwise (or when the PUT is refused) DROP plus
// INSERT DATA batches through the update URL. Never throws.
LoadResult load_dataset(const EndpointConfig& config, const std::vector<rdf::Triple>& triples);

// Removes the target graph; a missing graph is not an error.
std::optional<results::QueryError> drop_dataset(const EndpointConfig& config);

// POSTs the query as application/sparql-query, preferring JSON results.
// Every failure becomes an error outcome; connection failures are retried once.
results::QueryOutcome execute(const EndpointConfig& config, std::string_view query);

// Runs the queries with at most `parallelism` requests in flight. Outcomes
// are in input order; `elapsed_ms` (when given) receives per-query wall time.
std::vector<results::QueryOutcome> execute_all(const EndpointConfig& config, const std::vector<std::string>& queries,
                                               std::size_t parallelism, std::vector<double>* elapsed_ms = nullptr);

}  // namespace gsb::client
