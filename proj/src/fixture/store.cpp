#include <algorithm>
#include <mutex>

#include "fixture/evaluator.hpp"
#include "fixture/sparql.hpp"
#include "gsb/fixture.hpp"

namespace gsb::fixture {

using rdf::Term;
using rdf::Triple;

Profile Profile::named(std::string_view name) {
  if (name == "baseline_no_rdfs") return {"baseline_no_rdfs", false, false, false};
  if (name == "baseline") return {"baseline", true, false, false};
  if (name == "full") return {"full", true, true, true};
  throw std::invalid_argument("unknown profile '" + std::string(name) +
                              "' (expected baseline_no_rdfs, baseline or full)");
}

namespace {

using Hierarchy = std::map<std::string, std::set<std::string>>;

// Transitive (non-reflexive) closure of a relation given as direct edges.
Hierarchy transitive(const Hierarchy& direct) {
  Hierarchy out;
  for (const auto& [start, _] : direct) {
    auto& reach = out[start];
    std::vector<std::string> stack(direct.at(start).begin(), direct.at(start).end());
    while (!stack.empty()) {
      const auto next = stack.back();
      stack.pop_back();
      if (!reach.insert(next).second) continue;
      if (const auto it = direct.find(next); it != direct.end())
        stack.insert(stack.end(), it->second.begin(), it->second.end());
    }
  }
  return out;
}

}  // namespace

std::vector<Triple> rdfs_closure(const std::vector<Triple>& asserted) {
  const auto type = rdf::rdf("type");
  const auto sub_class = rdf::rdfs("subClassOf");
  const auto sub_property = rdf::rdfs("subPropertyOf");
  std::set<Triple> closure(asserted.begin(), asserted.end());
  for (;;) {
    Hierarchy classes;
    Hierarchy properties;
    for (const auto& t : closure) {
      if (!t.object.is_iri()) continue;
      if (t.predicate.value == sub_class) classes[t.subject.value].insert(t.object.value);
      if (t.predicate.value == sub_property) properties[t.subject.value].insert(t.object.value);
    }
    classes = transitive(classes);
    properties = transitive(properties);

    std::vector<Triple> derived;
    for (const auto& [c, supers] : classes)
      for (const auto& s : supers) derived.push_back({Term::iri(c), Term::iri(sub_class), Term::iri(s)});
    for (const auto& [p, supers] : properties)
      for (const auto& s : supers) derived.push_back({Term::iri(p), Term::iri(sub_property), Term::iri(s)});
    for (const auto& t : closure) {
      if (const auto it = properties.find(t.predicate.value); it != properties.end())
        for (const auto& q : it->second) derived.push_back({t.subject, Term::iri(q), t.object});
      if (t.predicate.value == type && t.object.is_iri())
        if (const auto it = classes.find(t.object.value); it != classes.end())
          for (const auto& c : it->second) derived.push_back({t.subject, t.predicate, Term::iri(c)});
    }
    const auto before = closure.size();
    closure.insert(derived.begin(), derived.end());
    if (closure.size() == before) break;
  }
  return {closure.begin(), closure.end()};
}

Store::Store(Profile profile) : profile_(std::move(profile)) { rebuild(); }

Store::~Store() = default;

void Store::rebuild() {
  std::set<Triple> all;
  for (const auto& [_, triples] : graphs_) all.insert(triples.begin(), triples.end());
  std::vector<Triple> asserted(all.begin(), all.end());
  auto triples = profile_.rdfs_entailment ? rdfs_closure(asserted) : std::move(asserted);
  snapshot_ = std::make_shared<const Snapshot>(profile_, std::move(triples));
}

void Store::put_graph(const std::string& graph, std::vector<Triple> triples) {
  std::unique_lock lock(mutex_);
  graphs_[graph] = std::set<Triple>(triples.begin(), triples.end());
  rebuild();
}

void Store::insert(const std::string& graph, const std::vector<Triple>& triples) {
  std::unique_lock lock(mutex_);
  graphs_[graph].insert(triples.begin(), triples.end());
  rebuild();
}

void Store::remove(const std::string& graph, const std::vector<Triple>& triples) {
  std::unique_lock lock(mutex_);
  if (const auto it = graphs_.find(graph); it != graphs_.end())
    for (const auto& t : triples) it->second.erase(t);
  rebuild();
}

bool Store::drop_graph(const std::string& graph) {
  std::unique_lock lock(mutex_);
  if (!graphs_.erase(graph)) return false;
  rebuild();
  return true;
}

void Store::drop_all() {
  std::unique_lock lock(mutex_);
  graphs_.clear();
  rebuild();
}

std::vector<Triple> Store::graph(const std::string& name) const {
  std::shared_lock lock(mutex_);
  const auto it = graphs_.find(name);
  if (it == graphs_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

bool Store::has_graph(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return graphs_.count(name) > 0;
}

std::size_t Store::size() const {
  std::shared_lock lock(mutex_);
  std::size_t n = 0;
  for (const auto& [_, triples] : graphs_) n += triples.size();
  return n;
}

results::QueryOutcome Store::query(std::string_view text) const {
  sparql::Query q;
  try {
    q = sparql::parse_query(text);
  } catch (const rdf::SyntaxError& e) {
    throw RequestError(400, std::string("query syntax: ") + e.what());
  }
  std::shared_ptr<const Snapshot> snap;
  {
    std::shared_lock lock(mutex_);
    snap = snapshot_;
  }
  return evaluate(*snap, q);
}

void Store::update(std::string_view text) {
  std::vector<sparql::UpdateOperation> ops;
  try {
    ops = sparql::parse_update(text);
  } catch (const rdf::SyntaxError& e) {
    throw RequestError(400, std::string("update syntax: ") + e.what());
  }
  std::unique_lock lock(mutex_);
  for (const auto& op : ops) {
    using Kind = sparql::UpdateOperation::Kind;
    switch (op.kind) {
      case Kind::InsertData: graphs_[op.graph].insert(op.triples.begin(), op.triples.end()); break;
      case Kind::DeleteData:
        if (const auto it = graphs_.find(op.graph); it != graphs_.end())
          for (const auto& t : op.triples) it->second.erase(t);
        break;
      case Kind::Drop:
      case Kind::Clear:
        if (op.all) {
          if (op.kind == Kind::Drop) graphs_.clear();
          else
            for (auto& [_, triples] : graphs_) triples.clear();
        } else if (const auto it = graphs_.find(op.graph); it != graphs_.end()) {
          if (op.kind == Kind::Drop) graphs_.erase(it);
          else it->second.clear();
        } else if (!op.silent && !op.graph.empty()) {
          rebuild();
          throw RequestError(404, "no graph <" + op.graph + ">");
        }
        break;
    }
  }
  rebuild();
}

}  // namespace gsb::fixture
