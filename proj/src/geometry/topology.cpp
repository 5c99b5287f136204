#include "gsb/geometry/topology.hpp"

#include <algorithm>
#include <stdexcept>

#include "boost_adapt.hpp"

namespace gsb::geometry {

namespace {

constexpr std::array kPredicates = {
    Predicate::sfEquals,  Predicate::sfDisjoint, Predicate::sfIntersects, Predicate::sfTouches,
    Predicate::sfCrosses, Predicate::sfWithin,   Predicate::sfContains,   Predicate::sfOverlaps,
    Predicate::ehEquals,  Predicate::ehDisjoint, Predicate::ehMeet,       Predicate::ehOverlap,
    Predicate::ehCovers,  Predicate::ehCoveredBy, Predicate::ehInside,    Predicate::ehContains,
    Predicate::rcc8eq,    Predicate::rcc8dc,     Predicate::rcc8ec,       Predicate::rcc8po,
    Predicate::rcc8tppi,  Predicate::rcc8tpp,    Predicate::rcc8ntpp,     Predicate::rcc8ntppi,
};

constexpr std::array<std::string_view, 24> kNames = {
    "sfEquals", "sfDisjoint", "sfIntersects", "sfTouches", "sfCrosses", "sfWithin", "sfContains",
    "sfOverlaps", "ehEquals", "ehDisjoint", "ehMeet", "ehOverlap", "ehCovers", "ehCoveredBy",
    "ehInside", "ehContains", "rcc8eq", "rcc8dc", "rcc8ec", "rcc8po", "rcc8tppi", "rcc8tpp",
    "rcc8ntpp", "rcc8ntppi",
};

// Dimension-independent definitions.
constexpr std::string_view kSfEquals[] = {"T*F**FFF*"};
constexpr std::string_view kDisjoint[] = {"FF*FF****"};
constexpr std::string_view kIntersects[] = {"T********", "*T*******", "***T*****", "****T****"};
constexpr std::string_view kTouches[] = {"FT*******", "F**T*****", "F***T****"};
constexpr std::string_view kWithin[] = {"T*F**F***"};
constexpr std::string_view kContains[] = {"T*****FF*"};
constexpr std::string_view kEquals9[] = {"TFFFTFFFT"};
constexpr std::string_view kOverlap9[] = {"T*T***T**"};
constexpr std::string_view kCovers[] = {"T*TFT*FF*"};
constexpr std::string_view kCoveredBy[] = {"TFF*TFT**"};
constexpr std::string_view kInside[] = {"TFF*FFT**"};
constexpr std::string_view kEhContains[] = {"T*TFF*FF*"};
constexpr std::string_view kRcc8Dc[] = {"FFTFFTTTT"};
constexpr std::string_view kRcc8Ec[] = {"FFTFTTTTT"};
constexpr std::string_view kRcc8Po[] = {"TTTTTTTTT"};
constexpr std::string_view kRcc8Tppi[] = {"TTTFTTFFT"};
constexpr std::string_view kRcc8Tpp[] = {"TFFTTFTTT"};
constexpr std::string_view kRcc8Ntpp[] = {"TFFTFFTTT"};
constexpr std::string_view kRcc8Ntppi[] = {"TTTFFTFFT"};

// Simple Features crosses/overlaps depend on the operand dimensions.
constexpr std::string_view kCrossesLowerHigher[] = {"T*T******"};
constexpr std::string_view kCrossesHigherLower[] = {"T*****T**"};
constexpr std::string_view kCrossesLines[] = {"0********"};
constexpr std::string_view kOverlapsLines[] = {"1*T***T**"};

bool cell_matches(int dim, char p) {
  switch (p) {
    case '*': return true;
    case 'T': return dim >= 0;
    case 'F': return dim < 0;
    case '0': return dim == 0;
    case '1': return dim == 1;
    case '2': return dim == 2;
  }
  throw std::invalid_argument(std::string("invalid DE-9IM pattern character '") + p + "'");
}

}  // namespace

De9imMatrix De9imMatrix::parse(std::string_view text) {
  if (text.size() != 9) throw std::invalid_argument("DE-9IM matrix must have 9 cells");
  De9imMatrix m;
  for (std::size_t i = 0; i < 9; ++i) {
    const char c = text[i];
    if (c == 'F' || c == 'f') m.cells_[i] = -1;
    else if (c >= '0' && c <= '2') m.cells_[i] = static_cast<std::int8_t>(c - '0');
    else throw std::invalid_argument(std::string("invalid DE-9IM matrix character '") + c + "'");
  }
  return m;
}

De9imMatrix De9imMatrix::transposed() const {
  De9imMatrix t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t.set(static_cast<Location>(j), static_cast<Location>(i),
            get(static_cast<Location>(i), static_cast<Location>(j)));
  return t;
}

std::string De9imMatrix::str() const {
  std::string out;
  for (auto cell : cells_) out += cell < 0 ? 'F' : static_cast<char>('0' + cell);
  return out;
}

De9imMatrix relate_matrix(const Geometry& a, const Geometry& b) {
  const auto ba = detail::to_boost(a);
  const auto bb = detail::to_boost(b);
  const auto matrix = std::visit(
      [](const auto& x, const auto& y) { return detail::bg::relation(x, y); }, ba, bb);
  return De9imMatrix::parse(matrix.str());
}

bool matches_pattern(const De9imMatrix& matrix, std::string_view pattern) {
  if (pattern.size() != 9) throw std::invalid_argument("DE-9IM pattern must have 9 characters");
  bool ok = true;
  for (std::size_t i = 0; i < 9; ++i) {
    // validate every character even after a mismatch
    const int dim = matrix.get(static_cast<Location>(i / 3), static_cast<Location>(i % 3));
    const char p = pattern[i] == 't' || pattern[i] == 'f' ? static_cast<char>(pattern[i] - 32) : pattern[i];
    ok = cell_matches(dim, p) && ok;
  }
  return ok;
}

std::span<const Predicate> all_predicates() { return kPredicates; }

std::string_view predicate_name(Predicate p) { return kNames[static_cast<std::size_t>(p)]; }

std::optional<Predicate> predicate_from_name(std::string_view name) {
  const auto it = std::find(kNames.begin(), kNames.end(), name);
  if (it == kNames.end()) return std::nullopt;
  return kPredicates[static_cast<std::size_t>(it - kNames.begin())];
}

PredicateFamily predicate_family(Predicate p) {
  const auto i = static_cast<int>(p);
  return i < 8 ? PredicateFamily::SimpleFeatures : i < 16 ? PredicateFamily::Egenhofer : PredicateFamily::Rcc8;
}

std::span<const std::string_view> predicate_patterns(Predicate p, int dim_a, int dim_b) {
  switch (p) {
    case Predicate::sfEquals: return kSfEquals;
    case Predicate::sfDisjoint:
    case Predicate::ehDisjoint: return kDisjoint;
    case Predicate::sfIntersects: return kIntersects;
    case Predicate::sfTouches:
    case Predicate::ehMeet: return kTouches;
    case Predicate::sfCrosses:
      if (dim_a == 1 && dim_b == 1) return kCrossesLines;
      if (dim_a < dim_b) return kCrossesLowerHigher;
      if (dim_a > dim_b) return kCrossesHigherLower;
      return {};
    case Predicate::sfWithin: return kWithin;
    case Predicate::sfContains: return kContains;
    case Predicate::sfOverlaps:
      if (dim_a != dim_b) return {};
      return dim_a == 1 ? std::span<const std::string_view>(kOverlapsLines) : kOverlap9;
    case Predicate::ehEquals: return kEquals9;
    case Predicate::ehOverlap: return kOverlap9;
    case Predicate::ehCovers: return kCovers;
    case Predicate::ehCoveredBy: return kCoveredBy;
    case Predicate::ehInside: return kInside;
    case Predicate::ehContains: return kEhContains;
    default: break;
  }
  if (dim_a != 2 || dim_b != 2) return {};
  switch (p) {
    case Predicate::rcc8eq: return kEquals9;
    case Predicate::rcc8dc: return kRcc8Dc;
    case Predicate::rcc8ec: return kRcc8Ec;
    case Predicate::rcc8po: return kRcc8Po;
    case Predicate::rcc8tppi: return kRcc8Tppi;
    case Predicate::rcc8tpp: return kRcc8Tpp;
    case Predicate::rcc8ntpp: return kRcc8Ntpp;
    case Predicate::rcc8ntppi: return kRcc8Ntppi;
    default: break;
  }
  return {};
}

bool evaluate_predicate(Predicate p, const De9imMatrix& matrix, int dim_a, int dim_b) {
  const auto patterns = predicate_patterns(p, dim_a, dim_b);
  return std::any_of(patterns.begin(), patterns.end(),
                     [&](std::string_view pattern) { return matches_pattern(matrix, pattern); });
}

bool topological_predicate(Predicate p, const Geometry& a, const Geometry& b) {
  return evaluate_predicate(p, relate_matrix(a, b), a.dimension(), b.dimension());
}

bool topological_predicate(std::string_view name, const Geometry& a, const Geometry& b) {
  const auto p = predicate_from_name(name);
  if (!p) throw std::invalid_argument("unknown topological predicate '" + std::string(name) + "'");
  return topological_predicate(*p, a, b);
}

}  // namespace gsb::geometry
