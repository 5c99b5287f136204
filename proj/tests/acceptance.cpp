// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "gsb/catalog.hpp"
#include "gsb/checker.hpp"
#include "gsb/dataset.hpp"
#include "gsb/geometry/functions.hpp"
#include "gsb/report.hpp"
#include "gsb/runner.hpp"
#include "httplib.h"
#include "support.hpp"

namespace {

using namespace gsb;
using geometry::Geometry;
using geometry::Predicate;
using geometry::Serialization;

// Collects the first few mismatches of one criterion.
struct Check {
  int failures = 0;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (++failures <= 5) detail << "    " << what << "\n";
  }
};

const catalog::Catalog& builtin() {
  static const auto c = catalog::builtin_catalog();
  return c;
}

// A stand-in endpoint with handlers supplied by the caller.
struct CannedServer {
  ~CannedServer() {
    http.stop();
    if (thread.joinable()) thread.join();
  }
  void start() {
    port = http.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { http.listen_after_bind(); });
    http.wait_until_ready();
  }
  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port) + path; }

  httplib::Server http;
  std::thread thread;
  int port = 0;
};

void catalog_arithmetic(Check& c) {
  const auto& cat = builtin();
  const auto errors = catalog::validate_catalog(cat);
  for (const auto& e : errors) c.expect(false, e);
  c.expect(cat.tests.size() == 206, "test count " + std::to_string(cat.tests.size()));
  std::map<int, int> counts;
  for (const auto& t : cat.tests) ++counts[t.requirement];
  const std::map<int, int> table = {{1, 1},  {2, 1},  {3, 1},  {4, 8},  {5, 8},  {6, 8},  {7, 1},  {8, 2},
                                    {9, 6},  {10, 1}, {11, 1}, {12, 1}, {13, 2}, {14, 1}, {15, 1}, {16, 2},
                                    {18, 1}, {19, 28}, {20, 2}, {21, 4}, {22, 32}, {23, 32}, {24, 32}, {25, 3},
                                    {26, 2}, {27, 1}, {28, 8}, {29, 8}, {30, 8}};
  c.expect(counts == table, "per-requirement counts differ from the table");
  c.expect(counts[19] == 28, "req 19 has " + std::to_string(counts[19]) + " queries");
  c.expect(!counts.contains(17), "req 17 has tests");
}

void score_lines(Check& c) {
  struct Line {
    const char* profile;
    int correct;
    const char* percent;
  };
  for (const auto& line : {Line{"full", 206, "100.00"}, Line{"baseline", 46, "56.67"},
                           Line{"baseline_no_rdfs", 40, "46.67"}}) {
    testing_support::LiveFixture live(line.profile);
    runner::RunConfig config;
    config.endpoint = live.config;
    config.parallelism = 4;
    std::ostringstream log;
    const auto out = runner::run_benchmark(config, builtin(), dataset::benchmark_dataset().all_triples(), log);
    if (!out.report) {
      c.expect(false, std::string(line.profile) + ": " + out.summary);
      continue;
    }
    c.expect(out.report->correct == line.correct && out.report->compliance_percent() == line.percent,
             std::string(line.profile) + ": " + out.summary);
  }
}

void single_topology_weight(Check& c) {
  std::vector<checker::TestResult> results;
  for (const auto& t : builtin().tests) {
    checker::TestResult r;
    r.test_id = t.id;
    r.verdict = t.id == "req4-sfEquals" ? checker::Verdict::Correct : checker::Verdict::Incorrect;
    if (r.verdict == checker::Verdict::Correct) r.matched_alternative = 0;
    results.push_back(r);
  }
  const auto rep = report::score(builtin(), results, "weights", "t0");
  const Rational expected = Rational(1, 30) + Rational(1, 30) * Rational(1, 8);
  c.expect(rep.compliance == expected, "compliance " + rep.compliance.str() + " != " + expected.str());
  c.expect(rep.compliance_percent() == "3.75", "rendered " + rep.compliance_percent());
}

void serialization_split_weights(Check& c) {
  std::map<std::pair<int, std::string>, std::map<std::string, Rational>> groups;
  for (const auto& t : builtin().tests)
    if (t.serialization.find('-') != std::string::npos) groups[{t.requirement, t.group}][t.serialization] = t.weight;
  // Five req 19 functions, relate, and the 24 predicate functions.
  c.expect(groups.size() == 30, std::to_string(groups.size()) + " binary groups");
  const std::map<std::string, Rational> shares = {
      {"wkt-wkt", Rational(1, 3)}, {"gml-gml", Rational(1, 3)}, {"wkt-gml", Rational(1, 6)}, {"gml-wkt", Rational(1, 6)}};
  for (const auto& [key, weights] : groups) {
    Rational total;
    for (const auto& [s, w] : weights) total = total + w;
    const auto name = "req " + std::to_string(key.first) + " " + key.second;
    c.expect(weights.size() == 4, name + " has " + std::to_string(weights.size()) + " variants");
    for (const auto& [s, w] : weights) {
      const auto it = shares.find(s);
      c.expect(it != shares.end() && w / total == it->second, name + " " + s + " share " + (w / total).str());
    }
  }
}

void equality_semantics(Check& c) {
  const auto& ds = dataset::benchmark_dataset();
  auto wkt = [](const std::string& text) { return geometry::parse_wkt(text).parsed; };
  auto gml = [](const std::string& text) { return geometry::parse_gml(text).parsed; };
  c.expect(geometry::geometry_equals(wkt(ds.exact("J").wkt), wkt(ds.exact("K").wkt), 0), "J != K");
  c.expect(geometry::geometry_equals(wkt(ds.exact("L").wkt), wkt(ds.exact("M").wkt), 0), "L != M");
  c.expect(geometry::geometry_equals(wkt(ds.exact("H").wkt), wkt(ds.exact("I").wkt), 0), "empty WKT H != I");
  c.expect(geometry::geometry_equals(wkt(ds.point("H").wkt), wkt(ds.point("I").wkt), 0), "empty WKT points H != I");
  c.expect(geometry::geometry_equals(gml(ds.exact("H").gml), gml(ds.exact("I").gml), 0), "empty GML H != I");
  c.expect(geometry::geometry_equals(gml(ds.point("H").gml), gml(ds.point("I").gml), 0), "empty GML points H != I");
  c.expect(geometry::geometry_equals(wkt("<http://www.opengis.net/def/crs/OGC/1.3/CRS84> Point(-88.38  31.95)"),
                                     wkt("<http://www.opengis.net/def/crs/EPSG/0/4326>   Point( 31.95 -88.38)"), 0),
           "literal L/M texts differ");
}

void de9im_oracle(Check& c) {
  std::vector<dataset::GeometryRecord> geoms;
  for (const auto& rec : dataset::benchmark_dataset().geometries)
    if (!rec.shape.is_empty()) geoms.push_back(rec);
  int pairs = 0;
  for (const auto& ra : geoms)
    for (const auto& rb : geoms) {
      ++pairs;
      const auto& a = ra.shape;
      const auto& b = rb.shape;
      const auto name = ra.iri + " / " + rb.iri;
      const auto m = geometry::relate_matrix(a, b).str();
      const auto s = testing_support::sampled_matrix(a, b).str();
      c.expect(m == s, name + ": " + m + " vs sampled " + s);
      auto holds = [](Predicate p, const Geometry& x, const Geometry& y) {
        return geometry::topological_predicate(p, x, y);
      };
      c.expect(holds(Predicate::sfContains, a, b) == holds(Predicate::sfWithin, b, a), name + " sfContains/sfWithin");
      c.expect(holds(Predicate::ehCovers, a, b) == holds(Predicate::ehCoveredBy, b, a), name + " ehCovers/ehCoveredBy");
      c.expect(holds(Predicate::rcc8tpp, a, b) == holds(Predicate::rcc8tppi, b, a), name + " rcc8tpp/rcc8tppi");
      c.expect(holds(Predicate::sfDisjoint, a, b) == !holds(Predicate::sfIntersects, a, b), name + " disjoint");
    }
  c.expect(pairs > 100, "only " + std::to_string(pairs) + " pairs");
}

void parser_round_trips(Check& c) {
  std::vector<Geometry> corpus;
  const auto& ds = dataset::benchmark_dataset();
  for (const auto& rec : ds.geometries) {
    corpus.push_back(geometry::parse_wkt(rec.wkt).parsed);
    c.expect(geometry::parse_gml(rec.gml).parsed == corpus.back(), rec.iri + ": GML and WKT literals differ");
  }
  std::mt19937 rng(20240611);
  for (int i = 0; i < 200; ++i) corpus.push_back(testing_support::random_geometry(rng));
  for (const auto& g : corpus) {
    for (const auto s : {Serialization::WKT, Serialization::GML}) {
      const auto text = geometry::serialize(g, s, true);
      c.expect(geometry::parse_literal(text, s).parsed == g, "round trip: " + text);
    }
    const auto w = checker::normalize_wkt(geometry::serialize(g, Serialization::WKT, true));
    c.expect(checker::normalize_wkt(w) == w, "WKT normalization: " + w);
    const auto m = checker::normalize_gml(geometry::serialize(g, Serialization::GML, true));
    c.expect(checker::normalize_gml(m) == m, "GML normalization: " + m);
  }
}

void results_round_trip(Check& c) {
  std::mt19937 rng(8);
  std::vector<results::QueryOutcome> outcomes;
  for (int i = 0; i < 100; ++i) outcomes.push_back(testing_support::random_outcome(rng));
  std::size_t next = 0;
  bool xml = false;
  CannedServer server;
  server.http.Post("/sparql", [&](const httplib::Request&, httplib::Response& res) {
    const auto& o = outcomes[next];
    if (xml) res.set_content(results::render_xml(o), std::string(results::kXmlMediaType));
    else res.set_content(results::render_json(o), std::string(results::kJsonMediaType));
  });
  server.start();
  client::EndpointConfig config;
  config.query_url = server.url("/sparql");
  for (const bool as_xml : {false, true}) {
    xml = as_xml;
    for (next = 0; next < outcomes.size(); ++next) {
      const auto& o = outcomes[next];
      const auto label = std::string(as_xml ? "xml " : "json ") + std::to_string(next);
      const auto body = as_xml ? results::render_xml(o) : results::render_json(o);
      c.expect(results::parse_results(body, as_xml ? results::kXmlMediaType : results::kJsonMediaType) == o,
               label + " direct");
      c.expect(client::execute(config, "ASK {}") == o, label + " over HTTP");
    }
  }
}

void error_containment(Check& c) {
  CannedServer server;
  server.http.Put("/data", [](const httplib::Request&, httplib::Response& res) { res.status = 201; });
  server.http.Delete("/data", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.http.Post("/sparql", [](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
    res.set_content("internal error\n", "text/plain");
  });
  server.start();
  runner::RunConfig config;
  config.endpoint.query_url = server.url("/sparql");
  config.endpoint.graph_store_url = server.url("/data");
  config.parallelism = 4;
  std::ostringstream log;
  const auto out = runner::run_benchmark(config, builtin(), dataset::benchmark_dataset().all_triples(), log);
  c.expect(out.exit_code == report::kExitNonCompliant, "exit code " + std::to_string(out.exit_code));
  if (!out.report) {
    c.expect(false, "no report: " + out.summary);
    return;
  }
  c.expect(out.report->correct == 0, std::to_string(out.report->correct) + " correct");
  c.expect(out.report->total == 206, std::to_string(out.report->total) + " scored");
  c.expect(out.report->compliance_percent() == "0.00", "compliance " + out.report->compliance_percent());
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
      {"catalog arithmetic", catalog_arithmetic},
      {"score lines of the fixture profiles", score_lines},
      {"single topology sub-test weight", single_topology_weight},
      {"serialization split weights", serialization_split_weights},
      {"CRS, axis order and empty geometry equality", equality_semantics},
      {"DE-9IM oracle and predicate identities", de9im_oracle},
      {"WKT and GML round trips", parser_round_trips},
      {"results format round trips", results_round_trip},
      {"error containment", error_containment},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    Check check;
    try {
      run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("threw: ") + e.what());
    }
    std::cout << (check.failures ? "FAIL" : "PASS") << "  " << ++index << ". " << name;
    if (check.failures) std::cout << " (" << check.failures << " mismatches)\n" << check.detail.str();
    else std::cout << "\n";
    failed += check.failures != 0;
  }
  std::cout << (9 - failed) << "/9 criteria pass\n";
  return failed ? 1 : 0;
}
