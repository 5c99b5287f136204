#pragma once

// Parser for the SPARQL subset the fixture evaluates: SELECT/ASK over one
// group of triple patterns, FILTER and BIND, ORDER BY, LIMIT/OFFSET and
// DISTINCT, plus INSERT DATA, DROP and CLEAR updates.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gsb/rdf.hpp"

namespace gsb::fixture::sparql {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Var, Constant, Call, Or, And, Not, Compare };
  Kind kind = Kind::Constant;
  std::string name;  // variable name, function IRI or builtin keyword (upper case), comparison operator
  rdf::Term value;   // Constant
  std::vector<ExprPtr> args;
};

struct Slot {
  std::optional<std::string> var;  // set for variables
  rdf::Term term;
};

struct TriplePattern {
  Slot subject;
  Slot predicate;
  Slot object;
};

struct Filter {
  ExprPtr expr;
};

struct Bind {
  ExprPtr expr;
  std::string var;
};

using GroupElement = std::variant<TriplePattern, Filter, Bind>;

struct OrderKey {
  ExprPtr expr;
  bool descending = false;
};

struct Query {
  enum class Form { Select, Ask };
  Form form = Form::Select;
  bool distinct = false;
  bool select_all = false;
  std::vector<std::string> projection;
  // SELECT (COUNT(*) AS ?v): the only aggregate, over the whole solution sequence.
  std::optional<std::string> count_variable;
  std::vector<GroupElement> where;
  std::vector<OrderKey> order;
  std::optional<std::size_t> limit;
  std::size_t offset = 0;

  // Variables in order of first appearance in the group.
  std::vector<std::string> group_variables() const;
  // Function IRIs called anywhere in the query.
  std::vector<std::string> called_functions() const;
};

struct UpdateOperation {
  enum class Kind { InsertData, DeleteData, Drop, Clear };
  Kind kind = Kind::InsertData;
  bool silent = false;
  bool all = false;     // DROP/CLEAR ALL
  std::string graph;    // empty for the default graph
  std::vector<rdf::Triple> triples;
};

// Throw rdf::SyntaxError for text outside the subset.
Query parse_query(std::string_view text);
std::vector<UpdateOperation> parse_update(std::string_view text);

}  // namespace gsb::fixture::sparql
