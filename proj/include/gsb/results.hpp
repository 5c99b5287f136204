#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gsb/rdf.hpp"
#include "json.hpp"

namespace gsb::results {

inline constexpr std::string_view kJsonMediaType = "application/sparql-results+json";
inline constexpr std::string_view kXmlMediaType = "application/sparql-results+xml";
inline constexpr std::string_view kResultsNamespace = "http://www.w3.org/2005/sparql-results#";

// Unbound variables are absent from a row.
using Row = std::map<std::string, rdf::Term>;

struct SolutionSequence {
  std::vector<std::string> variables;
  std::vector<Row> rows;

  friend bool operator==(const SolutionSequence&, const SolutionSequence&) = default;
};

enum class ErrorCategory { Connection, Timeout, Protocol, MalformedResults, Configuration };

std::string_view category_name(ErrorCategory category);

struct QueryError {
  ErrorCategory category = ErrorCategory::Protocol;
  std::string message;
  int http_status = 0;

  friend bool operator==(const QueryError&, const QueryError&) = default;
};

enum class OutcomeKind { Solutions, Boolean, Error };

struct QueryOutcome {
  std::variant<SolutionSequence, bool, QueryError> payload;

  static QueryOutcome solutions(SolutionSequence s) { return {std::move(s)}; }
  static QueryOutcome boolean(bool b) { return {b}; }
  static QueryOutcome error(ErrorCategory category, std::string message, int http_status = 0) {
    return {QueryError{category, std::move(message), http_status}};
  }

  OutcomeKind kind() const { return static_cast<OutcomeKind>(payload.index()); }
  bool is_error() const { return kind() == OutcomeKind::Error; }
  const SolutionSequence& solutions() const { return std::get<SolutionSequence>(payload); }
  bool boolean() const { return std::get<bool>(payload); }
  const QueryError& error() const { return std::get<QueryError>(payload); }

  friend bool operator==(const QueryOutcome&, const QueryOutcome&) = default;
};

// SPARQL JSON term encoding ({"type": "uri"|"bnode"|"literal", ...}).
nlohmann::json term_to_json(const rdf::Term& term);
// Throws std::invalid_argument on a malformed term object.
rdf::Term term_from_json(const nlohmann::json& j);

// SPARQL Query Results JSON document for a boolean or solution outcome.
nlohmann::json to_json(const QueryOutcome& outcome);
// Throws std::invalid_argument when `j` is not a results document.
QueryOutcome from_json(const nlohmann::json& j);

std::string render_json(const QueryOutcome& outcome);
std::string render_xml(const QueryOutcome& outcome);

// Picks the format from the media type, sniffing the body when the type names
// neither. Never throws: a body that does not parse gives a malformed-results error.
QueryOutcome parse_results(std::string_view body, std::string_view content_type);

// Compact human-readable snapshot used in reports.
std::string describe(const QueryOutcome& outcome);

}  // namespace gsb::results
