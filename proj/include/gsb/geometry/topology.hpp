#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gsb/geometry/geometry.hpp"

namespace gsb::geometry {

enum class Location : std::uint8_t { Interior = 0, Boundary = 1, Exterior = 2 };

// Dimensionally extended nine-intersection matrix. Cells are stored row-major
// (II, IB, IE, BI, BB, BE, EI, EB, EE); -1 stands for F (empty intersection).
class De9imMatrix {
 public:
  De9imMatrix() { cells_.fill(-1); }

  // Nine characters from {F, 0, 1, 2}.
  static De9imMatrix parse(std::string_view text);

  int get(Location a, Location b) const { return cells_[index(a, b)]; }
  void set(Location a, Location b, int dim) { cells_[index(a, b)] = static_cast<std::int8_t>(dim); }
  De9imMatrix transposed() const;
  std::string str() const;

  friend bool operator==(const De9imMatrix&, const De9imMatrix&) = default;

 private:
  static std::size_t index(Location a, Location b) {
    return static_cast<std::size_t>(a) * 3 + static_cast<std::size_t>(b);
  }
  std::array<std::int8_t, 9> cells_{};
};

// DE-9IM of `a` against `b` under planar topology. Both operands must be
// non-empty and in CRS84 or EPSG:4326 (stored lon/lat, so the same plane).
De9imMatrix relate_matrix(const Geometry& a, const Geometry& b);

// Pattern of nine characters from {T, F, *, 0, 1, 2}; throws
// std::invalid_argument for anything else.
bool matches_pattern(const De9imMatrix& matrix, std::string_view pattern);

enum class PredicateFamily { SimpleFeatures, Egenhofer, Rcc8 };

enum class Predicate : std::uint8_t {
  sfEquals, sfDisjoint, sfIntersects, sfTouches, sfCrosses, sfWithin, sfContains, sfOverlaps,
  ehEquals, ehDisjoint, ehMeet, ehOverlap, ehCovers, ehCoveredBy, ehInside, ehContains,
  rcc8eq, rcc8dc, rcc8ec, rcc8po, rcc8tppi, rcc8tpp, rcc8ntpp, rcc8ntppi,
};

std::span<const Predicate> all_predicates();
std::string_view predicate_name(Predicate p);
std::optional<Predicate> predicate_from_name(std::string_view name);
PredicateFamily predicate_family(Predicate p);

// The DE-9IM pattern disjunction that defines `p` for operands of the given
// topological dimensions. An empty result means the relation cannot hold for
// that dimension pair (e.g. sfCrosses between two surfaces, RCC8 off surfaces).
std::span<const std::string_view> predicate_patterns(Predicate p, int dim_a, int dim_b);

bool evaluate_predicate(Predicate p, const De9imMatrix& matrix, int dim_a, int dim_b);

bool topological_predicate(Predicate p, const Geometry& a, const Geometry& b);
// Throws std::invalid_argument for an unknown predicate name.
bool topological_predicate(std::string_view name, const Geometry& a, const Geometry& b);

}  // namespace gsb::geometry
