#include "gsb/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#ifndef GSB_CATALOG_DIR
#define GSB_CATALOG_DIR "data/catalog"
#endif

namespace gsb::catalog {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kCounts[kRequirementCount + 1] = {
    0,                          // unused
    1,  1,  1,                  // CORE
    8,  8,  8,                  // TOP
    1,  2,  6,  1,  1, 1, 2, 1, 1, 2, 0, 1, 28, 2,  // GEOEXT 7..20
    4,  32, 32, 32,             // GTOP
    3,  2,  1,                  // RDFSE
    8,  8,  8,                  // QRW
};

constexpr std::string_view kExtensionNames[] = {"CORE", "TOP", "GEOEXT", "GTOP", "RDFSE", "QRW"};
constexpr std::string_view kCheckerNames[] = {"boolean",           "numeric",      "literal_normalized",
                                              "geometry_semantic", "ordered_list", "unordered_set"};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CatalogError("cannot write " + path.string());
  out << content;
}

// Expected share of one serialization variant within its function group.
std::optional<Rational> variant_share(std::string_view serialization) {
  if (serialization == "wkt-wkt" || serialization == "gml-gml") return Rational(1, 3);
  if (serialization == "wkt-gml" || serialization == "gml-wkt") return Rational(1, 6);
  if (serialization == "wkt" || serialization == "gml") return Rational(1, 2);
  return std::nullopt;
}

bool split_by_function(int requirement) { return requirement == 19 || (requirement >= 21 && requirement <= 24); }

}  // namespace

Extension extension_of(int requirement) {
  if (requirement < 1 || requirement > kRequirementCount)
    throw CatalogError("requirement " + std::to_string(requirement) + " is out of range 1-30");
  if (requirement <= 3) return Extension::CORE;
  if (requirement <= 6) return Extension::TOP;
  if (requirement <= 20) return Extension::GEOEXT;
  if (requirement <= 24) return Extension::GTOP;
  if (requirement <= 27) return Extension::RDFSE;
  return Extension::QRW;
}

std::string_view extension_name(Extension e) { return kExtensionNames[static_cast<int>(e)]; }

Extension extension_from_name(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (const auto e : kExtensions)
    if (extension_name(e) == upper) return e;
  throw CatalogError("unknown extension '" + std::string(name) + "'");
}

int expected_test_count(int requirement) {
  if (requirement < 1 || requirement > kRequirementCount) return 0;
  return kCounts[requirement];
}

std::string_view checker_name(CheckerKind k) { return kCheckerNames[static_cast<int>(k)]; }

CheckerKind checker_from_name(std::string_view name) {
  for (int i = 0; i < 6; ++i)
    if (kCheckerNames[i] == name) return static_cast<CheckerKind>(i);
  throw CatalogError("unknown checker '" + std::string(name) + "'");
}

const TestCase& Catalog::find(std::string_view id) const {
  for (const auto& t : tests)
    if (t.id == id) return t;
  throw CatalogError("no test '" + std::string(id) + "'");
}

std::size_t Catalog::count(int requirement) const {
  return static_cast<std::size_t>(
      std::count_if(tests.begin(), tests.end(), [&](const TestCase& t) { return t.requirement == requirement; }));
}

json answer_to_json(const Answer& answer, CheckerKind kind) {
  switch (kind) {
    case CheckerKind::Boolean: return std::get<std::string>(answer);
    case CheckerKind::Numeric: return std::get<double>(answer);
    case CheckerKind::LiteralNormalized:
    case CheckerKind::GeometrySemantic: return results::term_to_json(std::get<rdf::Term>(answer));
    case CheckerKind::OrderedList:
    case CheckerKind::UnorderedSet:
      return results::to_json(results::QueryOutcome::solutions(std::get<results::SolutionSequence>(answer)));
  }
  return nullptr;
}

Answer answer_from_json(const json& j, CheckerKind kind) {
  try {
    switch (kind) {
      case CheckerKind::Boolean: return j.get<std::string>();
      case CheckerKind::Numeric: return j.get<double>();
      case CheckerKind::LiteralNormalized:
      case CheckerKind::GeometrySemantic: return results::term_from_json(j);
      case CheckerKind::OrderedList:
      case CheckerKind::UnorderedSet: {
        auto outcome = results::from_json(j);
        if (outcome.kind() != results::OutcomeKind::Solutions)
          throw CatalogError("list answer must be a solution sequence");
        return outcome.solutions();
      }
    }
  } catch (const json::exception& e) {
    throw CatalogError(std::string("malformed answer: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw CatalogError(std::string("malformed answer: ") + e.what());
  }
  throw CatalogError("unknown checker kind");
}

std::filesystem::path default_catalog_dir() {
  if (const char* env = std::getenv("GSB_CATALOG_DIR"); env && *env) return env;
  return GSB_CATALOG_DIR;
}

Catalog load_catalog(const std::filesystem::path& dir) {
  json manifest;
  try {
    manifest = json::parse(read_file(dir / "catalog.json"));
  } catch (const json::exception& e) {
    throw CatalogError("catalog.json: " + std::string(e.what()));
  }
  Catalog catalog;
  std::set<std::string> ids;
  try {
    for (const auto& entry : manifest.at("tests")) {
      TestCase t;
      t.id = entry.at("id").get<std::string>();
      if (!ids.insert(t.id).second) throw CatalogError("duplicate test id '" + t.id + "'");
      t.requirement = entry.at("requirement").get<int>();
      t.extension = extension_from_name(entry.at("extension").get<std::string>());
      if (t.extension != extension_of(t.requirement))
        throw CatalogError(t.id + ": extension does not match requirement " + std::to_string(t.requirement));
      t.group = entry.value("group", "");
      t.serialization = entry.value("serialization", "");
      t.query_file = entry.at("query_file").get<std::string>();
      if (!std::filesystem::exists(dir / t.query_file)) throw CatalogError("missing query file " + t.query_file);
      t.query = read_file(dir / t.query_file);
      t.answer.kind = checker_from_name(entry.at("checker").get<std::string>());
      t.answer.tolerance = entry.value("tolerance", 1e-6);
      json alternatives;
      if (entry.contains("answers_file")) {
        t.answers_file = entry["answers_file"].get<std::string>();
        if (!std::filesystem::exists(dir / t.answers_file))
          throw CatalogError("missing answers file " + t.answers_file);
        alternatives = json::parse(read_file(dir / t.answers_file));
      } else {
        alternatives = entry.at("alternatives");
      }
      for (const auto& a : alternatives) t.answer.alternatives.push_back(answer_from_json(a, t.answer.kind));
      t.weight = Rational(entry.at("weight_num").get<std::int64_t>(), entry.at("weight_den").get<std::int64_t>());
      catalog.tests.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw CatalogError("catalog.json: " + std::string(e.what()));
  } catch (const std::domain_error& e) {
    throw CatalogError("catalog.json: " + std::string(e.what()));
  }
  std::map<int, Rational> sums;
  for (const auto& t : catalog.tests) sums[t.requirement] += t.weight;
  for (const auto& [req, sum] : sums)
    if (sum != Rational(1))
      throw CatalogError("requirement " + std::to_string(req) + " weights sum to " + sum.str());
  return catalog;
}

void export_catalog(const Catalog& catalog, const std::filesystem::path& dir) {
  ordered_json tests = ordered_json::array();
  for (const auto& t : catalog.tests) {
    ordered_json e;
    e["id"] = t.id;
    e["requirement"] = t.requirement;
    e["extension"] = extension_name(t.extension);
    if (!t.group.empty()) e["group"] = t.group;
    if (!t.serialization.empty()) e["serialization"] = t.serialization;
    e["query_file"] = t.query_file;
    e["checker"] = checker_name(t.answer.kind);
    if (t.answer.kind == CheckerKind::Numeric || t.answer.kind == CheckerKind::GeometrySemantic)
      e["tolerance"] = t.answer.tolerance;
    json alternatives = json::array();
    for (const auto& a : t.answer.alternatives) alternatives.push_back(answer_to_json(a, t.answer.kind));
    if (t.answers_file.empty()) {
      e["alternatives"] = ordered_json::parse(alternatives.dump());
    } else {
      e["answers_file"] = t.answers_file;
      write_file(dir / t.answers_file, alternatives.dump(2) + "\n");
    }
    e["weight_num"] = t.weight.num();
    e["weight_den"] = t.weight.den();
    tests.push_back(std::move(e));
    write_file(dir / t.query_file, t.query);
  }
  ordered_json manifest;
  manifest["tests"] = std::move(tests);
  write_file(dir / "catalog.json", manifest.dump(2) + "\n");
}

std::vector<std::string> validate_catalog(const Catalog& catalog) {
  std::vector<std::string> errors;
  if (catalog.tests.size() != kExpectedTestCount)
    errors.push_back("catalog has " + std::to_string(catalog.tests.size()) + " tests, expected " +
                     std::to_string(kExpectedTestCount));
  std::set<std::string> ids;
  for (const auto& t : catalog.tests) {
    if (!ids.insert(t.id).second) errors.push_back("duplicate test id '" + t.id + "'");
    if (t.requirement < 1 || t.requirement > kRequirementCount) {
      errors.push_back(t.id + ": requirement " + std::to_string(t.requirement) + " out of range");
      continue;
    }
    if (t.extension != extension_of(t.requirement)) errors.push_back(t.id + ": wrong extension");
    if (t.query.find_first_not_of(" \t\r\n") == std::string::npos) errors.push_back(t.id + ": empty query");
    if (t.answer.alternatives.empty()) errors.push_back(t.id + ": no answer alternatives");
    if (t.answer.kind == CheckerKind::Boolean) {
      std::set<std::string> lex;
      for (const auto& a : t.answer.alternatives)
        if (const auto* s = std::get_if<std::string>(&a)) lex.insert(*s);
      const bool both_true = lex == std::set<std::string>{"1", "true"};
      const bool both_false = lex == std::set<std::string>{"0", "false"};
      if (!both_true && !both_false) errors.push_back(t.id + ": boolean answers must list true/1 or false/0");
    }
    if (!(t.weight > Rational(0) && t.weight <= Rational(1))) errors.push_back(t.id + ": weight out of (0,1]");
  }

  for (int req = 1; req <= kRequirementCount; ++req) {
    const auto n = catalog.count(req);
    if (n != static_cast<std::size_t>(kCounts[req]))
      errors.push_back("requirement " + std::to_string(req) + " has " + std::to_string(n) + " tests, expected " +
                       std::to_string(kCounts[req]));
    Rational sum;
    for (const auto& t : catalog.tests)
      if (t.requirement == req) sum += t.weight;
    if (n > 0 && sum != Rational(1))
      errors.push_back("requirement " + std::to_string(req) + " weights sum to " + sum.str());

    if (!split_by_function(req) || n == 0) continue;
    std::map<std::string, std::vector<const TestCase*>> groups;
    for (const auto& t : catalog.tests)
      if (t.requirement == req) groups[t.group].push_back(&t);
    const Rational group_share(1, static_cast<std::int64_t>(groups.size()));
    for (const auto& [group, members] : groups) {
      Rational group_sum;
      for (const auto* t : members) group_sum += t->weight;
      if (group_sum != group_share)
        errors.push_back("requirement " + std::to_string(req) + " function " + group + " weighs " + group_sum.str() +
                         ", expected " + group_share.str());
      if (members.size() != 2 && members.size() != 4)
        errors.push_back("requirement " + std::to_string(req) + " function " + group + " has " +
                         std::to_string(members.size()) + " serialization variants");
      std::set<std::string> seen;
      for (const auto* t : members) {
        const auto share = variant_share(t->serialization);
        const bool fits = share && ((members.size() == 2) == (t->serialization.find('-') == std::string::npos));
        if (!fits || !seen.insert(t->serialization).second)
          errors.push_back(t->id + ": unexpected serialization variant '" + t->serialization + "'");
        else if (t->weight != *share * group_share)
          errors.push_back(t->id + ": weight " + t->weight.str() + ", expected " + (*share * group_share).str());
      }
    }
  }
  if (catalog.count(19) == 28) {
    std::set<std::string> functions;
    for (const auto& t : catalog.tests)
      if (t.requirement == 19) functions.insert(t.group);
    if (functions.size() != 9) errors.push_back("requirement 19 covers " + std::to_string(functions.size()) +
                                                " functions, expected 9");
  }
  return errors;
}

Catalog select(const Catalog& catalog, const Selection& filter) {
  if (filter.empty()) return catalog;
  Catalog out;
  for (const auto& t : catalog.tests)
    if (filter.requirements.contains(t.requirement) || filter.extensions.contains(t.extension))
      out.tests.push_back(t);
  if (out.tests.empty()) {
    if (filter.requirements.contains(kUntestedRequirement))
      throw CatalogError("requirement " + std::to_string(kUntestedRequirement) + " has no tests");
    throw CatalogError("selection matches no tests");
  }
  return out;
}

std::set<int> parse_requirement_list(std::string_view text) {
  std::set<int> out;
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw CatalogError("bad requirement number '" + std::string(s) + "'");
    if (v < 1 || v > kRequirementCount) throw CatalogError("requirement " + std::string(s) + " is out of range 1-30");
    return v;
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      out.insert(parse_int(item));
    } else {
      const int lo = parse_int(item.substr(0, dash));
      const int hi = parse_int(item.substr(dash + 1));
      if (lo > hi) throw CatalogError("empty requirement range '" + std::string(item) + "'");
      for (int r = lo; r <= hi; ++r) out.insert(r);
    }
    start = end + 1;
  }
  return out;
}

}  // namespace gsb::catalog
