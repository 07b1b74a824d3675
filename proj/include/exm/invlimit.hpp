#pragma once

#include "exm/base_space.hpp"
#include "exm/rat.hpp"
#include "exm/rng.hpp"
#include "exm/zcon.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace exm::invlim {

// The iterated tower X_1, X_2 = Z(X_1), ..., X_{k+1} = Z(X_k), every level
// carrying the truncated metric so it stays bounded by one, with the product
// metric max_n d_n/2^n on threads.

struct LevelPoint;
using LevelPtr = std::shared_ptr<const LevelPoint>;

// A point of X_k. Level 1 holds a base point; level k+1 holds a fiber point
// of the construction over X_k (fiber tag, spike selector, parameter).
struct LevelPoint {
  int level = 1;
  base::BasePoint base{};  // level 1 only
  LevelPtr fiber;          // level >= 2: the fiber tag a
  LevelPtr toward;         // level >= 2: null selects the star spike
  Rat t{0};
};

// Total order used both for canonical forms and for vortex identifiers when
// a level acts as the base of the next one.
int compare(const LevelPoint& a, const LevelPoint& b);
inline bool equal(const LevelPoint& a, const LevelPoint& b) { return compare(a, b) == 0; }

// Value-comparable handle so the construction kernel can treat level points
// as base points.
struct PointRef {
  LevelPtr p;
  friend bool operator==(const PointRef& a, const PointRef& b) { return equal(*a.p, *b.p); }
  friend bool operator<(const PointRef& a, const PointRef& b) { return compare(*a.p, *b.p) < 0; }
};

struct Tower {
  base::BaseSpace bs;  // X_1, stored truncated
  int height = 3;
  Rat eps{2};

  std::string describe() const {
    return "tower(base=" + bs.describe() + ",height=" + std::to_string(height) +
           ",eps=" + rat_to_string(eps) + ")";
  }
};

Tower make_tower(base::BaseSpace bs, int height = 3, Rat eps = Rat(2));

LevelPtr level1(const Tower& tower, base::BasePoint p);
// Builds a level-(fiber->level + 1) point; validates spike ranges against the
// level metric and canonicalizes t == 0 to the fiber vortex.
LevelPtr make_zlevel(const Tower& tower, LevelPtr fiber, LevelPtr toward, Rat t);

// The truncated metric d_k of level k (both points must sit on that level).
Rat level_distance(const Tower& tower, const LevelPoint& a, const LevelPoint& b);

// Bonding map X_{k+1} -> X_k: the fiber tag. Errors on level 1.
LevelPtr bond(const LevelPoint& p);
// Canonical section X_k -> X_{k+1}: the star point of p's fiber.
LevelPtr star_lift(const Tower& tower, LevelPtr p);

// A representable inverse-limit thread: coordinates below the representative
// are bonding images, coordinates above are iterated star lifts.
struct LimitPoint {
  LevelPtr rep;
};

// A star point represents the same thread as its own fiber, so canonical
// representatives never end in a star point; this makes thread equality a
// representative comparison.
LimitPoint as_limit(const Tower& tower, LevelPtr rep);

// Coordinate n of the thread, 1 <= n <= height.
LevelPtr project(const Tower& tower, const LimitPoint& x, int n);

// Exact product-metric distance max_n d_n(pi_n x, pi_n u)/2^n. Star tails
// make the supremum computable: distinct threads have distinct star vortices
// at every level past the deepest representative, where the truncated level
// distance is exactly one.
Rat limit_distance(const Tower& tower, const LimitPoint& x, const LimitPoint& u);

struct Enclosure {
  Rat lo;
  Rat hi;
};

// Certified truncation of the product-metric max after K levels:
// limit_distance lies in [lo, hi] and hi - lo <= 2^-(K+1).
Enclosure prefix_enclosure(const Tower& tower, const LimitPoint& x, const LimitPoint& u, int K);

struct EconomicalReport {
  std::size_t sample_size = 0;
  // |d(A x A)| including zero.
  std::size_t distinct_distances = 0;
  // |d_n(pi_n A x pi_n A)| per level 1..height, then the star-tail level
  // height+1 whose distances lie in {0, 1}.
  std::vector<std::size_t> per_level_distinct;
  std::size_t tail_distinct = 0;
  std::size_t per_level_sum = 0;
  bool sum_bound_holds = false;
  // Both sides of the projection-cardinality chain, reported, not asserted.
  std::size_t sum_sq_projections = 0;
  std::size_t sup_projections = 0;
};

EconomicalReport economical_report(const Tower& tower, const std::vector<LimitPoint>& sample);

LevelPtr sample_level_point(const Tower& tower, int level, Rng& rng);
// Random representatives at random levels in [1, height].
std::vector<LimitPoint> sample_limit_points(const Tower& tower, std::size_t count,
                                            std::uint64_t seed);

std::string format_level_point(const LevelPoint& p);
inline std::string format_limit_point(const LimitPoint& x) { return format_level_point(*x.rep); }

}  // namespace exm::invlim
