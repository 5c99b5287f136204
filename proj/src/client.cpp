#include "gsb/client.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <thread>
#include <variant>

#include "httplib.h"

namespace gsb::client {

using results::ErrorCategory;
using results::QueryError;
using results::QueryOutcome;

namespace {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;    // path plus query string, "/" when absent
};

std::optional<Url> split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) return std::nullopt;
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http") return std::nullopt;
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return Url{url, "/"};
  return Url{url.substr(0, path_start), url.substr(path_start)};
}

std::string percent_encode(std::string_view text) {
  std::string out;
  for (const unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

struct Response {
  int status = 0;
  std::string body;
  std::string content_type;
};

// A finished exchange or the reason there was none.
using Exchange = std::variant<Response, QueryError>;

class Http {
 public:
  explicit Http(const EndpointConfig& config) : config_(config) {}

  Exchange send(const std::string& method, const std::string& url, const std::string& body,
                const std::string& content_type, const httplib::Headers& headers = {}) const {
    const auto parts = split_url(url);
    if (!parts) return QueryError{ErrorCategory::Configuration, "unsupported URL '" + url + "' (expected http://)", 0};
    for (int attempt = 0;; ++attempt) {
      httplib::Client http(parts->origin);
      const auto timeout = std::chrono::duration<double>(config_.timeout_seconds);
      const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout);
      http.set_connection_timeout(micros);
      http.set_read_timeout(micros);
      http.set_write_timeout(micros);
      if (config_.auth) http.set_basic_auth(config_.auth->user, config_.auth->password);
      const auto started = std::chrono::steady_clock::now();
      httplib::Result res = method == "POST"  ? http.Post(parts->path, headers, body, content_type)
                            : method == "PUT" ? http.Put(parts->path, headers, body, content_type)
                                              : http.Delete(parts->path, headers);
      if (res) return Response{res->status, res->body, res->get_header_value("Content-Type")};
      const auto err = res.error();
      const double waited = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      if (err == httplib::Error::ConnectionTimeout ||
          (err == httplib::Error::Read && waited >= 0.9 * config_.timeout_seconds))
        return QueryError{ErrorCategory::Timeout, "no response within " + format_seconds() + " s", 0};
      if (err == httplib::Error::Connection && attempt == 0) continue;
      return QueryError{ErrorCategory::Connection, method + " " + url + ": " + httplib::to_string(err), 0};
    }
  }

 private:
  std::string format_seconds() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", config_.timeout_seconds);
    return buf;
  }

  const EndpointConfig& config_;
};

std::string with_graph(const std::string& url, const std::string& graph) {
  return url + (url.find('?') == std::string::npos ? "?" : "&") + "graph=" + percent_encode(graph);
}

std::optional<QueryError> status_error(const Response& r, const std::string& what) {
  if (r.status < 400) return std::nullopt;
  auto body = r.body.substr(0, 300);
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
  return QueryError{ErrorCategory::Protocol, what + ": HTTP " + std::to_string(r.status) + (body.empty() ? "" : ": " + body),
                    r.status};
}

std::optional<QueryError> post_update(const Http& http, const std::string& url, const std::string& update) {
  const auto ex = http.send("POST", url, update, "application/sparql-update");
  if (const auto* e = std::get_if<QueryError>(&ex)) return *e;
  return status_error(std::get<Response>(ex), "update");
}

}  // namespace

LoadResult load_dataset(const EndpointConfig& config, const std::vector<rdf::Triple>& triples) {
  LoadResult result;
  result.triples = triples.size();
  if (!config.graph_store_url && !config.update_url) {
    result.error = QueryError{ErrorCategory::Configuration, "loading needs a graph store URL or an update URL", 0};
    return result;
  }
  const Http http(config);
  if (config.graph_store_url) {
    result.method = "graph-store";
    const auto ex = http.send("PUT", with_graph(*config.graph_store_url, config.target_graph),
                              rdf::write_turtle(triples), "text/turtle");
    if (const auto* e = std::get_if<QueryError>(&ex)) result.error = *e;
    else result.error = status_error(std::get<Response>(ex), "graph store PUT");
    if (!result.error) {
      result.ok = true;
      return result;
    }
    if (!config.update_url) return result;
  }

  result.method = "update";
  result.error = post_update(http, *config.update_url, "DROP SILENT GRAPH <" + config.target_graph + ">");
  if (result.error) return result;
  for (std::size_t start = 0, batch = 0; start < triples.size(); start += kInsertBatchSize, ++batch) {
    std::string update = "INSERT DATA { GRAPH <" + config.target_graph + "> {\n";
    for (std::size_t i = start; i < std::min(triples.size(), start + kInsertBatchSize); ++i) {
      const auto& t = triples[i];
      update += rdf::to_ntriples(t.subject) + " " + rdf::to_ntriples(t.predicate) + " " + rdf::to_ntriples(t.object) +
                " .\n";
    }
    update += "} }\n";
    if (auto e = post_update(http, *config.update_url, update)) {
      e->message = "batch " + std::to_string(batch) + ": " + e->message;
      result.error = std::move(e);
      result.failed_batch = batch;
      return result;
    }
  }
  result.ok = true;
  return result;
}

std::optional<QueryError> drop_dataset(const EndpointConfig& config) {
  const Http http(config);
  if (config.graph_store_url) {
    const auto ex = http.send("DELETE", with_graph(*config.graph_store_url, config.target_graph), "", "");
    if (const auto* e = std::get_if<QueryError>(&ex)) return *e;
    const auto& r = std::get<Response>(ex);
    if (r.status == 404) return std::nullopt;
    if (auto e = status_error(r, "graph store DELETE"); !e || !config.update_url) return e;
  }
  if (config.update_url) return post_update(http, *config.update_url, "DROP SILENT GRAPH <" + config.target_graph + ">");
  return QueryError{ErrorCategory::Configuration, "dropping needs a graph store URL or an update URL", 0};
}

QueryOutcome execute(const EndpointConfig& config, std::string_view query) {
  try {
    const Http http(config);
    const httplib::Headers headers = {
        {"Accept", std::string(results::kJsonMediaType) + ", " + std::string(results::kXmlMediaType) + ";q=0.9"}};
    const auto ex = http.send("POST", config.query_url, std::string(query), "application/sparql-query", headers);
    if (const auto* e = std::get_if<QueryError>(&ex)) return QueryOutcome{*e};
    const auto& r = std::get<Response>(ex);
    if (auto e = status_error(r, "query")) return QueryOutcome{*e};
    return results::parse_results(r.body, r.content_type);
  } catch (const std::exception& e) {
    return QueryOutcome::error(ErrorCategory::Connection, e.what());
  }
}

std::vector<QueryOutcome> execute_all(const EndpointConfig& config, const std::vector<std::string>& queries,
                                      std::size_t parallelism, std::vector<double>* elapsed_ms) {
  std::vector<QueryOutcome> out(queries.size());
  std::vector<double> times(queries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < queries.size();) {
      const auto started = std::chrono::steady_clock::now();
      out[i] = execute(config, queries[i]);
      times[i] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    }
  };
  const auto n = std::max<std::size_t>(1, std::min(parallelism, queries.size()));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < n; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (elapsed_ms) *elapsed_ms = std::move(times);
  return out;
}

}  // namespace gsb::client
