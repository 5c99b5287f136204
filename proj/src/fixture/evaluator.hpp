#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "fixture/sparql.hpp"
#include "gsb/fixture.hpp"

namespace gsb::fixture {

// Immutable view of the store that queries run against.
struct Snapshot {
  Profile profile;
  std::vector<rdf::Triple> triples;  // closure when entailment is on, sorted
  std::map<std::string, std::vector<const rdf::Triple*>> by_predicate;
  std::map<std::string, std::vector<const rdf::Triple*>> by_subject;

  // Relation statements asserted or computed from geometry literals, built
  // on first use. Keyed by relation property IRI; sorted and unique.
  mutable std::once_flag rewrite_once;
  mutable std::map<std::string, std::vector<rdf::Triple>> rewritten;

  Snapshot(Profile p, std::vector<rdf::Triple> sorted_triples);
  const std::vector<rdf::Triple>& relation(const std::string& property) const;
};

// Throws RequestError(400) when the query calls a function the profile lacks
// and unknown functions are not configured to yield empty results.
results::QueryOutcome evaluate(const Snapshot& snapshot, const sparql::Query& query);

}  // namespace gsb::fixture
