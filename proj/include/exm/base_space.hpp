#pragma once

#include "exm/error.hpp"
#include "exm/rat.hpp"
#include "exm/rng.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace exm::base {

// A finite set of positive integers, kept sorted and duplicate-free.
using CantorSet = std::vector<std::uint32_t>;

CantorSet make_cantor_set(std::vector<std::uint32_t> elements);

// Point of a base space: rational in [0,1], finite integer set, or an index
// into a finite discrete carrier. Variant order matters for the total order
// used by vortex identifiers downstream.
using BasePoint = std::variant<Rat, CantorSet, std::uint32_t>;

enum class Kind { UnitIntervalQ, CantorFinite, FiniteDiscrete };

struct BaseSpace {
  Kind kind = Kind::UnitIntervalQ;

  // UnitIntervalQ: sampling grid uses denominators up to 2^grid_log2.
  unsigned grid_log2 = 16;

  // CantorFinite: sampled sets draw elements from {1, ..., max_element}.
  std::uint32_t max_element = 6;

  // FiniteDiscrete: symmetric distance table, zero diagonal.
  std::vector<std::vector<Rat>> table;

  std::size_t point_count() const { return table.size(); }
  std::string describe() const;
};

BaseSpace unit_interval(unsigned grid_log2 = 16);
BaseSpace cantor_finite(std::uint32_t max_element = 6);
// Validates metric axioms of the table (symmetry, zero diagonal, positivity
// off the diagonal, triangle inequality).
BaseSpace finite_discrete(std::vector<std::vector<Rat>> table);
// Skips validation; negative controls in the audit harness need broken tables.
BaseSpace finite_discrete_unchecked(std::vector<std::vector<Rat>> table);

// Throws validation_error naming the first violated axiom.
void validate_table(const std::vector<std::vector<Rat>>& table);

// Membership of p in the space's carrier; throws validation_error on kind
// mismatch or out-of-carrier values.
void require_point(const BaseSpace& space, const BasePoint& p);

// 0 if A == B, else 1/min of the symmetric difference.
Rat cantor_distance(const CantorSet& a, const CantorSet& b);

Rat base_distance(const BaseSpace& space, const BasePoint& p, const BasePoint& q);

// The first-countability gauge: the metric truncated at one.
Rat gauge(const BaseSpace& space, const BasePoint& p, const BasePoint& q);

// Space with the same carrier and distance min(d, 1). UnitIntervalQ and
// CantorFinite are already bounded by one and pass through unchanged.
BaseSpace truncate(const BaseSpace& space);

BasePoint sample_point(const BaseSpace& space, Rng& rng);

std::string format_point(const BasePoint& p);
// Literals: "p/q" (interval), "{1,2,3}" or "{}" (cantor), "3" (discrete index).
BasePoint parse_point(const BaseSpace& space, const std::string& text);

}  // namespace exm::base
