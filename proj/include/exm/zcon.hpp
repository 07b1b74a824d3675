#pragma once

#include "exm/base_space.hpp"
#include "exm/cobweb.hpp"
#include "exm/error.hpp"
#include "exm/rat.hpp"
#include "exm/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace exm::zcon {

// Generic kernel of the construction, shared with the inverse-limit tower.
//
// Over a base space bounded by one, the fiber of a consists of the thread
// [bar(a), star(a)] plus, for every other base point b, the initial segment
// of [bar(a), star(b)] that stops at distance gauge(b, a) short of star(b).
// Distances are induced from the cobweb over {bar(x)} u {star(x)}.

enum class VTag : std::uint8_t { Bar = 0, Star = 1 };

template <class P>
struct Vortex {
  VTag tag = VTag::Bar;
  P at{};

  friend bool operator==(const Vortex& a, const Vortex& b) {
    return a.tag == b.tag && a.at == b.at;
  }
  friend bool operator<(const Vortex& a, const Vortex& b) {
    if (a.tag != b.tag) return a.tag < b.tag;
    return a.at < b.at;
  }
};

// A fiber point: spike selector plus thread parameter measured from bar(a).
// toward == nullopt selects the star spike [bar(a), star(a)].
// Canonical form: t == 0 collapses to the star-spike representation of the
// vortex bar(a).
template <class P>
struct Rep {
  P fiber{};
  std::optional<P> toward;
  Rat t{0};

  friend bool operator==(const Rep& a, const Rep& b) {
    return a.fiber == b.fiber && a.toward == b.toward && a.t == b.t;
  }
  friend bool operator<(const Rep& a, const Rep& b) {
    if (a.fiber < b.fiber) return true;
    if (b.fiber < a.fiber) return false;
    if (a.toward.has_value() != b.toward.has_value()) return !a.toward.has_value();
    if (a.toward && *a.toward != *b.toward) return *a.toward < *b.toward;
    return a.t < b.t;
  }
};

// Validated construction; gauge(b, a) bounds the toward-spike parameter.
template <class P, class Gauge>
Rep<P> kernel_make(const Rat& eps, P fiber, std::optional<P> toward, Rat t, Gauge&& gauge) {
  if (toward && *toward == fiber)
    throw validation_error("toward spike must aim at a different base point");
  Rat hi = toward ? Rat(eps - gauge(*toward, fiber)) : eps;
  if (t < 0 || t > hi)
    throw validation_error("spike parameter " + rat_to_string(t) + " outside [0, " +
                           rat_to_string(hi) + "]");
  if (t == 0) return Rep<P>{std::move(fiber), std::nullopt, Rat(0)};
  return Rep<P>{std::move(fiber), std::move(toward), std::move(t)};
}

template <class P>
cobweb::Point<Vortex<P>> kernel_embed(const Rat& eps, const Rep<P>& z) {
  Vortex<P> from{VTag::Bar, z.fiber};
  Vortex<P> to{VTag::Star, z.toward ? *z.toward : z.fiber};
  return cobweb::make_point(std::move(from), std::move(to), z.t, eps);
}

template <class P>
Rat kernel_distance(const Rat& eps, const Rep<P>& x, const Rep<P>& y) {
  return cobweb::distance(eps, kernel_embed(eps, x), kernel_embed(eps, y));
}

// ---------------------------------------------------------------------------
// Concrete construction over a base-space oracle.

struct ZSpace {
  base::BaseSpace bs;  // stored truncated; gauge == its metric
  Rat eps{2};

  std::string describe() const {
    return "zcon(base=" + bs.describe() + ",eps=" + rat_to_string(eps) + ")";
  }
};

using ZPoint = Rep<base::BasePoint>;
using ZVortex = Vortex<base::BasePoint>;
using ZEmbedded = cobweb::Point<ZVortex>;

// Base spaces always pass through truncate(); eps must exceed the base
// diameter bound of one so spike tips never collapse into star vortices.
ZSpace make_zspace(base::BaseSpace bs, Rat eps = Rat(2));

ZPoint z_make(const ZSpace& space, base::BasePoint fiber,
              std::optional<base::BasePoint> toward, Rat t);

ZEmbedded z_embed(const ZSpace& space, const ZPoint& p);

Rat z_distance(const ZSpace& space, const ZPoint& p, const ZPoint& q);
Rat z_distance_truncated(const ZSpace& space, const ZPoint& p, const ZPoint& q);

inline const base::BasePoint& f_project(const ZPoint& p) { return p.fiber; }

// Named points of a fiber.
ZPoint bar_point(const ZSpace& space, base::BasePoint a);
ZPoint star_point(const ZSpace& space, base::BasePoint a);
// The tip of fiber a's spike toward b, at distance gauge(b, a) from star(b).
ZPoint tip_toward(const ZSpace& space, base::BasePoint a, base::BasePoint b);

struct FiberMinDistance {
  Rat value;
  ZPoint witness_in_a;  // tip of a's spike toward b
  ZPoint witness_in_b;  // star point of b
};

// min over x in fiber(a), u in fiber(b) of the induced distance; equals
// gauge(a, b), achieved by the witness pair.
FiberMinDistance fiber_min_distance(const ZSpace& space, const base::BasePoint& a,
                                    const base::BasePoint& b);

struct BallImageWitness {
  bool contains = false;
  // Fiber-b point within the ball when contains; otherwise absent.
  std::optional<ZPoint> witness;
  // Exact min distance from star(a) to fiber b (gauge(a,b); 0 when b == a).
  Rat separation;
};

// Whether b lies in the projection of the open ball B(star(a), r).
BallImageWitness ball_image_contains(const ZSpace& space, const base::BasePoint& a,
                                     const Rat& r, const base::BasePoint& b);

// Deterministic seeded fiber sampler mixing the vortex, the star point,
// spike interiors and spike tips.
std::vector<ZPoint> sample_fiber(const ZSpace& space, const base::BasePoint& a,
                                 std::size_t count, std::uint64_t seed);

// One random point of a random fiber; building block for space-wide audits.
ZPoint sample_zpoint(const ZSpace& space, Rng& rng);

// Chain-audit fixtures over a UnitIntervalQ base: for every fiber on the grid
// {k/grid_den}, points along the star spike and the spike toward the right
// grid neighbour at the given spacing, tips included.
std::vector<ZPoint> skeleton_sample(const ZSpace& space, std::uint32_t grid_den,
                                    const Rat& spacing);
// Star points of the grid fibers only.
std::vector<ZPoint> star_grid_sample(const ZSpace& space, std::uint32_t grid_den);

std::string format_zpoint(const ZPoint& p);
// Literals: "star:<a>:<t>" or "toward:<a>:<b>:<t>" with base-point literals.
ZPoint parse_zpoint(const ZSpace& space, const std::string& text);

}  // namespace exm::zcon
