#include "fixture/evaluator.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>

#include "gsb/geometry/functions.hpp"
#include "gsb/geometry/geometry.hpp"
#include "gsb/geometry/topology.hpp"

namespace gsb::fixture {

namespace geom = gsb::geometry;
using rdf::Term;
using rdf::Triple;
using results::Row;
using sparql::Expr;
using sparql::ExprPtr;

namespace {

const std::string kWkt = rdf::geo("wktLiteral");
const std::string kGml = rdf::geo("gmlLiteral");
const std::string kBoolean = rdf::xsd("boolean");
const std::string kDouble = rdf::xsd("double");

const std::set<std::string> kNonTopological = {"distance",     "buffer",     "convexHull",    "intersection",
                                               "union",        "difference", "symDifference", "envelope",
                                               "boundary",     "getSRID"};

bool is_numeric(const Term& t) {
  if (!t.is_literal()) return false;
  for (const char* dt : {"integer", "decimal", "double", "float", "int", "long", "short", "byte",
                         "nonNegativeInteger", "positiveInteger", "negativeInteger", "nonPositiveInteger",
                         "unsignedInt", "unsignedLong", "unsignedShort", "unsignedByte"})
    if (t.datatype == rdf::xsd(dt)) return true;
  return false;
}

std::optional<double> number(const Term& t) {
  if (!is_numeric(t)) return std::nullopt;
  std::string_view s = t.value;
  if (s.starts_with('+')) s.remove_prefix(1);
  double v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<geom::GeometryLiteral> geometry_literal(const Term& t) {
  if (!t.is_literal()) return std::nullopt;
  try {
    if (t.datatype == kWkt) return geom::parse_wkt(t.value);
    if (t.datatype == kGml) return geom::parse_gml(t.value);
  } catch (const geom::GeometryError&) {
  }
  return std::nullopt;
}

bool supported_function(const Profile& profile, const std::string& iri) {
  if (!profile.geo_functions || !iri.starts_with(rdf::kGeof)) return false;
  const auto name = iri.substr(rdf::kGeof.size());
  return name == "relate" || kNonTopological.count(name) || geom::predicate_from_name(name).has_value();
}

bool is_relation_property(const Term& t) {
  return t.is_iri() && t.value.starts_with(rdf::kGeo) &&
         geom::predicate_from_name(std::string_view(t.value).substr(rdf::kGeo.size())).has_value();
}

// Unbound < blank < IRI < literal; numbers by value, other literals by lexical form.
int compare_terms(const std::optional<Term>& a, const std::optional<Term>& b) {
  if (!a || !b) return a ? 1 : (b ? -1 : 0);
  auto rank = [](const Term& t) { return t.is_blank() ? 0 : t.is_iri() ? 1 : 2; };
  if (rank(*a) != rank(*b)) return rank(*a) < rank(*b) ? -1 : 1;
  if (a->is_literal()) {
    const auto x = number(*a);
    const auto y = number(*b);
    if (x && y && *x != *y) return *x < *y ? -1 : 1;
  }
  if (const int c = a->value.compare(b->value)) return c < 0 ? -1 : 1;
  if (const int c = a->datatype.compare(b->datatype)) return c < 0 ? -1 : 1;
  const int c = a->lang.compare(b->lang);
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}

class Evaluator {
 public:
  std::optional<Term> eval(const ExprPtr& e, const Row& row) const {
    switch (e->kind) {
      case Expr::Kind::Var: {
        const auto it = row.find(e->name);
        if (it == row.end()) return std::nullopt;
        return it->second;
      }
      case Expr::Kind::Constant: return e->value;
      case Expr::Kind::Not: {
        const auto v = truth(e->args[0], row);
        if (!v) return std::nullopt;
        return Term::boolean(!*v);
      }
      case Expr::Kind::And:
      case Expr::Kind::Or: {
        const auto a = truth(e->args[0], row);
        const auto b = truth(e->args[1], row);
        const bool is_and = e->kind == Expr::Kind::And;
        // SPARQL's three-valued logic: an error is absorbed by a decisive operand.
        if (a && b) return Term::boolean(is_and ? (*a && *b) : (*a || *b));
        if ((a && *a != is_and) || (b && *b != is_and)) return Term::boolean(!is_and);
        return std::nullopt;
      }
      case Expr::Kind::Compare: return compare(e->name, eval(e->args[0], row), eval(e->args[1], row));
      case Expr::Kind::Call: return call(*e, row);
    }
    return std::nullopt;
  }

  std::optional<bool> truth(const ExprPtr& e, const Row& row) const {
    const auto v = eval(e, row);
    if (!v || !v->is_literal()) return std::nullopt;
    if (v->datatype == kBoolean) return v->value == "true" || v->value == "1";
    if (const auto n = number(*v)) return *n != 0;
    if (v->datatype == rdf::xsd("string") || v->datatype == rdf::rdf("langString")) return !v->value.empty();
    return std::nullopt;
  }

 private:
  static std::optional<Term> compare(const std::string& op, const std::optional<Term>& a,
                                     const std::optional<Term>& b) {
    if (!a || !b) return std::nullopt;
    int c = 0;
    const auto x = number(*a);
    const auto y = number(*b);
    if (x && y) {
      c = *x < *y ? -1 : *x > *y ? 1 : 0;
    } else if (a->is_literal() && b->is_literal() && a->datatype == kBoolean && b->datatype == kBoolean) {
      const bool p = a->value == "true" || a->value == "1";
      const bool q = b->value == "true" || b->value == "1";
      c = p == q ? 0 : (p ? 1 : -1);
    } else if (op == "=" || op == "!=") {
      return Term::boolean((*a == *b) == (op == "="));
    } else if (a->is_literal() && b->is_literal() && a->datatype == b->datatype && a->lang == b->lang) {
      c = a->value.compare(b->value);
    } else {
      return std::nullopt;
    }
    if (op == "=") return Term::boolean(c == 0);
    if (op == "!=") return Term::boolean(c != 0);
    if (op == "<") return Term::boolean(c < 0);
    if (op == "<=") return Term::boolean(c <= 0);
    if (op == ">") return Term::boolean(c > 0);
    return Term::boolean(c >= 0);
  }

  std::optional<Term> call(const Expr& e, const Row& row) const {
    if (e.name == "BOUND") {
      if (e.args.size() != 1 || e.args[0]->kind != Expr::Kind::Var) return std::nullopt;
      return Term::boolean(row.count(e.args[0]->name) > 0);
    }
    std::vector<Term> args;
    for (const auto& a : e.args) {
      auto v = eval(a, row);
      if (!v) return std::nullopt;
      args.push_back(std::move(*v));
    }
    if (e.name == "DATATYPE") {
      if (args.size() != 1 || !args[0].is_literal()) return std::nullopt;
      return Term::iri(args[0].datatype);
    }
    if (e.name == "STR") {
      if (args.size() != 1 || args[0].is_blank()) return std::nullopt;
      return Term::literal(args[0].value);
    }
    if (e.name == "LANG") {
      if (args.size() != 1 || !args[0].is_literal()) return std::nullopt;
      return Term::literal(args[0].lang);
    }
    if (e.name == "ISIRI" || e.name == "ISURI") return args.size() == 1 ? std::optional(Term::boolean(args[0].is_iri())) : std::nullopt;
    if (e.name == "ISLITERAL") return args.size() == 1 ? std::optional(Term::boolean(args[0].is_literal())) : std::nullopt;
    if (e.name == "ISBLANK") return args.size() == 1 ? std::optional(Term::boolean(args[0].is_blank())) : std::nullopt;
    if (e.name == "SAMETERM") return args.size() == 2 ? std::optional(Term::boolean(args[0] == args[1])) : std::nullopt;
    try {
      return geof(e.name.substr(rdf::kGeof.size()), args);
    } catch (const std::exception&) {
      return std::nullopt;  // evaluation error: unbound in BIND, false in FILTER
    }
  }

  static std::optional<Term> geof(const std::string& name, const std::vector<Term>& args) {
    std::vector<geom::GeometryLiteral> geoms;
    for (const auto& a : args) {
      if (auto g = geometry_literal(a)) geoms.push_back(std::move(*g));
      else break;
    }
    if (const auto p = geom::predicate_from_name(name)) {
      if (args.size() != 2 || geoms.size() != 2) return std::nullopt;
      const auto& a = geoms[0].parsed;
      const auto& b = geoms[1].parsed;
      if (a.is_empty() || b.is_empty()) {
        // Only the equality relations are defined on empty operands.
        if (*p != geom::Predicate::sfEquals && *p != geom::Predicate::ehEquals && *p != geom::Predicate::rcc8eq)
          return std::nullopt;
        return Term::boolean(geom::geometry_equals(a, b, 0));
      }
      return Term::boolean(geom::topological_predicate(*p, a, b));
    }
    if (name == "relate") {
      if (args.size() != 3 || geoms.size() != 2 || !args[2].is_literal()) return std::nullopt;
      return Term::boolean(
          geom::matches_pattern(geom::relate_matrix(geoms[0].parsed, geoms[1].parsed), args[2].value));
    }
    std::vector<geom::FunctionValue> values;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i < geoms.size()) values.emplace_back(geoms[i].parsed);
      else if (const auto n = number(args[i])) values.emplace_back(*n);
      else if (args[i].is_iri()) values.emplace_back(args[i].value);
      else return std::nullopt;
    }
    const auto result = geom::nontopological_function(name, values);
    if (const auto* d = std::get_if<double>(&result)) return Term::literal(geom::format_number(*d), kDouble);
    if (const auto* s = std::get_if<std::string>(&result)) return Term::literal(*s, rdf::xsd("anyURI"));
    // Results take the serialization of the first argument.
    const auto ser = geoms.empty() ? geom::Serialization::WKT : geoms[0].serialization;
    return Term::literal(geom::serialize(std::get<geom::Geometry>(result), ser, true),
                         ser == geom::Serialization::WKT ? kWkt : kGml);
  }
};

// Substitutes bindings, then yields the candidate statements for a pattern.
class Matcher {
 public:
  explicit Matcher(const Snapshot& snap) : snap_(snap) {}

  std::vector<Row> join(const std::vector<Row>& rows, const sparql::TriplePattern& tp) const {
    std::vector<Row> out;
    for (const auto& row : rows) {
      const auto s = resolve(tp.subject, row);
      const auto p = resolve(tp.predicate, row);
      const auto o = resolve(tp.object, row);
      auto consider = [&](const Triple& t) {
        if (s && t.subject != *s) return;
        if (p && t.predicate != *p) return;
        if (o && t.object != *o) return;
        Row next = row;
        if (!bind(next, tp.subject, t.subject) || !bind(next, tp.predicate, t.predicate) ||
            !bind(next, tp.object, t.object))
          return;
        out.push_back(std::move(next));
      };
      if (p && snap_.profile.query_rewrite && is_relation_property(*p)) {
        for (const auto& t : snap_.relation(p->value)) consider(t);
      } else if (p && p->is_iri()) {
        if (const auto it = snap_.by_predicate.find(p->value); it != snap_.by_predicate.end())
          for (const auto* t : it->second) consider(*t);
      } else if (s && s->is_iri()) {
        if (const auto it = snap_.by_subject.find(s->value); it != snap_.by_subject.end())
          for (const auto* t : it->second) consider(*t);
      } else {
        for (const auto& t : snap_.triples) consider(t);
      }
    }
    return out;
  }

 private:
  static std::optional<Term> resolve(const sparql::Slot& slot, const Row& row) {
    if (!slot.var) return slot.term;
    const auto it = row.find(*slot.var);
    if (it == row.end()) return std::nullopt;
    return it->second;
  }

  static bool bind(Row& row, const sparql::Slot& slot, const Term& value) {
    if (!slot.var) return true;
    const auto [it, inserted] = row.emplace(*slot.var, value);
    return inserted || it->second == value;
  }

  const Snapshot& snap_;
};

results::QueryOutcome empty_outcome(const sparql::Query& q) {
  if (q.form == sparql::Query::Form::Ask) return results::QueryOutcome::boolean(false);
  if (q.count_variable)
    return results::QueryOutcome::solutions({{*q.count_variable}, {{{*q.count_variable, Term::integer(0)}}}});
  return results::QueryOutcome::solutions({q.select_all ? q.group_variables() : q.projection, {}});
}

}  // namespace

Snapshot::Snapshot(Profile p, std::vector<Triple> sorted_triples)
    : profile(std::move(p)), triples(std::move(sorted_triples)) {
  for (const auto& t : triples) {
    by_predicate[t.predicate.value].push_back(&t);
    by_subject[t.subject.value].push_back(&t);
  }
}

const std::vector<Triple>& Snapshot::relation(const std::string& property) const {
  std::call_once(rewrite_once, [this] {
    // Geometries relate through their WKT (GML when there is none), features
    // through their default geometry. Empty geometries relate to nothing.
    std::map<std::string, geom::Geometry> shapes;
    for (const std::string& prop : {rdf::geo("asGML"), rdf::geo("asWKT")}) {
      const auto it = by_predicate.find(prop);
      if (it == by_predicate.end()) continue;
      for (const auto* t : it->second) {
        if (!t->subject.is_iri()) continue;
        if (const auto g = geometry_literal(t->object)) shapes[t->subject.value] = g->parsed;
      }
    }
    std::vector<std::pair<Term, const geom::Geometry*>> nodes;
    for (const auto& [iri, shape] : shapes)
      if (!shape.is_empty()) nodes.emplace_back(Term::iri(iri), &shape);
    if (const auto it = by_predicate.find(rdf::geo("hasDefaultGeometry")); it != by_predicate.end()) {
      std::set<std::string> seen;
      for (const auto* t : it->second) {
        const auto g = shapes.find(t->object.value);
        if (!t->subject.is_iri() || g == shapes.end() || g->second.is_empty()) continue;
        if (seen.insert(t->subject.value).second) nodes.emplace_back(t->subject, &g->second);
      }
    }
    std::map<std::string, std::set<Triple>> merged;
    for (const auto p : geom::all_predicates()) {
      const auto iri = rdf::geo(geom::predicate_name(p));
      auto& bucket = merged[iri];
      if (const auto it = by_predicate.find(iri); it != by_predicate.end())
        for (const auto* t : it->second) bucket.insert(*t);
    }
    for (const auto& [s, gs] : nodes)
      for (const auto& [o, go] : nodes) {
        geom::De9imMatrix m;
        try {
          m = geom::relate_matrix(*gs, *go);
        } catch (const geom::GeometryError&) {
          continue;
        }
        for (const auto p : geom::all_predicates())
          if (geom::evaluate_predicate(p, m, gs->dimension(), go->dimension()))
            merged[rdf::geo(geom::predicate_name(p))].insert({s, Term::iri(rdf::geo(geom::predicate_name(p))), o});
      }
    for (auto& [iri, set] : merged) rewritten[iri] = std::vector<Triple>(set.begin(), set.end());
  });
  return rewritten.at(property);
}

results::QueryOutcome evaluate(const Snapshot& snap, const sparql::Query& q) {
  for (const auto& fn : q.called_functions()) {
    if (supported_function(snap.profile, fn)) continue;
    if (snap.profile.unknown_function_empty) return empty_outcome(q);
    throw RequestError(400, "unknown function <" + fn + ">");
  }

  const Evaluator ev;
  const Matcher matcher(snap);
  std::vector<Row> rows{Row{}};
  std::vector<ExprPtr> filters;
  for (const auto& el : q.where) {
    if (const auto* tp = std::get_if<sparql::TriplePattern>(&el)) {
      rows = matcher.join(rows, *tp);
    } else if (const auto* b = std::get_if<sparql::Bind>(&el)) {
      for (auto& row : rows) {
        if (row.count(b->var)) throw RequestError(400, "BIND target ?" + b->var + " is already bound");
        if (auto v = ev.eval(b->expr, row)) row.emplace(b->var, std::move(*v));
      }
    } else {
      filters.push_back(std::get<sparql::Filter>(el).expr);
    }
  }
  if (!filters.empty()) {
    std::erase_if(rows, [&](const Row& row) {
      return !std::all_of(filters.begin(), filters.end(), [&](const ExprPtr& f) { return ev.truth(f, row) == true; });
    });
  }

  if (q.form == sparql::Query::Form::Ask) return results::QueryOutcome::boolean(!rows.empty());

  if (!q.order.empty()) {
    std::vector<std::pair<std::vector<std::optional<Term>>, Row>> keyed;
    keyed.reserve(rows.size());
    for (auto& row : rows) {
      std::vector<std::optional<Term>> keys;
      for (const auto& k : q.order) keys.push_back(ev.eval(k.expr, row));
      keyed.emplace_back(std::move(keys), std::move(row));
    }
    std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& x, const auto& y) {
      for (std::size_t i = 0; i < q.order.size(); ++i) {
        const int c = compare_terms(x.first[i], y.first[i]);
        if (c != 0) return q.order[i].descending ? c > 0 : c < 0;
      }
      return false;
    });
    rows.clear();
    for (auto& [keys, row] : keyed) rows.push_back(std::move(row));
  }

  if (q.count_variable) {
    const auto n = static_cast<long long>(rows.size());
    return results::QueryOutcome::solutions({{*q.count_variable}, {{{*q.count_variable, Term::integer(n)}}}});
  }
  results::SolutionSequence out;
  out.variables = q.select_all ? q.group_variables() : q.projection;
  std::set<Row> seen;
  for (const auto& row : rows) {
    Row projected;
    for (const auto& v : out.variables)
      if (const auto it = row.find(v); it != row.end()) projected.emplace(v, it->second);
    if (q.distinct && !seen.insert(projected).second) continue;
    out.rows.push_back(std::move(projected));
  }
  const auto first = std::min(q.offset, out.rows.size());
  out.rows.erase(out.rows.begin(), out.rows.begin() + static_cast<std::ptrdiff_t>(first));
  if (q.limit && out.rows.size() > *q.limit) out.rows.resize(*q.limit);
  return results::QueryOutcome::solutions(std::move(out));
}

}  // namespace gsb::fixture
