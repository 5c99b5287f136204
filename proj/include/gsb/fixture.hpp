#pragma once

// Reference SPARQL endpoint: an in-memory triple store, an evaluator for the
// query subset the catalog uses and an HTTP front end. Profiles switch RDFS
// entailment, the geof: functions and the relation rewrite on or off.

#include <map>
#include <memory>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gsb/rdf.hpp"
#include "gsb/results.hpp"

namespace gsb::fixture {

struct Profile {
  std::string name = "full";
  bool rdfs_entailment = true;
  bool geo_functions = true;
  bool query_rewrite = true;
  // Queries calling an unsupported function answer 400 unless this is set,
  // in which case they yield no solutions (ASK: false).
  bool unknown_function_empty = false;

  // "baseline_no_rdfs", "baseline" or "full"; throws std::invalid_argument otherwise.
  static Profile named(std::string_view name);
};

// A request the endpoint refuses: syntax outside the subset, an unknown
// function, a missing graph.
class RequestError : public std::runtime_error {
 public:
  RequestError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// Fixpoint of subclass and subproperty transitivity, rdf:type propagation
// along rdfs:subClassOf and statement propagation along rdfs:subPropertyOf.
// The result is sorted, unique and contains `asserted`.
std::vector<rdf::Triple> rdfs_closure(const std::vector<rdf::Triple>& asserted);

struct Snapshot;

class Store {
 public:
  explicit Store(Profile profile);
  ~Store();

  const Profile& profile() const { return profile_; }

  // Graph names are IRIs; "" is the default graph. Queries see the union.
  void put_graph(const std::string& graph, std::vector<rdf::Triple> triples);
  void insert(const std::string& graph, const std::vector<rdf::Triple>& triples);
  void remove(const std::string& graph, const std::vector<rdf::Triple>& triples);
  // False when the graph does not exist.
  bool drop_graph(const std::string& graph);
  void drop_all();
  std::vector<rdf::Triple> graph(const std::string& name) const;
  bool has_graph(const std::string& name) const;
  std::size_t size() const;

  // Throws RequestError(400) for unsupported syntax or an unknown function.
  results::QueryOutcome query(std::string_view text) const;
  // INSERT DATA, DELETE DATA, DROP and CLEAR. Throws RequestError.
  void update(std::string_view text);

 private:
  void rebuild();

  Profile profile_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::set<rdf::Triple>> graphs_;
  std::shared_ptr<const Snapshot> snapshot_;
};

class Server {
 public:
  explicit Server(Profile profile);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  Store& store() { return store_; }

  // Binds to `port` (0 picks a free one) and serves on a background thread.
  // Returns the bound port; throws std::runtime_error when binding fails.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  // Blocks until the server stops.
  void wait();
  void stop();
  int port() const { return port_; }

  std::string query_url() const;
  std::string data_url() const;
  std::string update_url() const;

 private:
  struct Impl;
  Store store_;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  int port_ = 0;
  std::string host_;
};

}  // namespace gsb::fixture
