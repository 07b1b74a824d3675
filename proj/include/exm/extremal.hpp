#pragma once

#include "exm/cobweb.hpp"
#include "exm/error.hpp"
#include "exm/rat.hpp"
#include "exm/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exm::extremal {

// Fibered space over (0,1) whose value map has a local extremum everywhere.
// The vortex set carries bar(a), up(a), down(a) for every rational a in
// (0,1), all pairwise at distance one. Fiber a consists of the full threads
// [bar(a), up(a)] and [bar(a), down(a)] plus, for every b above a, the
// segment of [bar(a), down(b)] stopping b-a short of down(b), and for every
// b below a, the segment of [bar(a), up(b)] stopping a-b short of up(b).
// Distances are induced from the ambient cobweb with eps = 1.

enum class ETag : std::uint8_t { Bar = 0, Up = 1, Down = 2 };

struct EVortex {
  ETag tag = ETag::Bar;
  Rat at{0};

  friend bool operator==(const EVortex& a, const EVortex& b) {
    return a.tag == b.tag && a.at == b.at;
  }
  friend bool operator<(const EVortex& a, const EVortex& b) {
    if (a.tag != b.tag) return a.tag < b.tag;
    return a.at < b.at;
  }
};

enum class Spike : std::uint8_t { Up, Down, TowardDown, TowardUp };

struct EPoint {
  Rat a{0};            // fiber, in (0,1)
  Spike spike = Spike::Up;
  Rat b{0};            // target fiber for Toward spikes
  Rat t{0};            // from bar(a); canonical form: t == 0 is (Up, b=0)

  friend bool operator==(const EPoint& x, const EPoint& y) = default;
};

inline Rat eps() { return Rat(1); }

// Validated construction; canonicalizes t == 0 to the fiber vortex.
EPoint e_make(Rat a, Spike spike, Rat b, Rat t);
inline EPoint e_make(Rat a, Spike spike, Rat t) {
  return e_make(std::move(a), spike, Rat(0), std::move(t));
}

// Named points.
EPoint bar_point(Rat a);
EPoint up_point(Rat a);    // the local-minimum point of fiber a
EPoint down_point(Rat a);  // the local-maximum point of fiber a
// Tip of fiber a's segment toward up(b) (b < a) or down(b) (b > a).
EPoint tip_toward_up(Rat a, Rat b);
EPoint tip_toward_down(Rat a, Rat b);

using Embedded = cobweb::Point<EVortex>;
Embedded e_embed(const EPoint& p);

Rat e_distance(const EPoint& p, const EPoint& q);

inline const Rat& e_value(const EPoint& p) { return p.a; }

struct Interval {
  Rat lo;
  Rat hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(const Rat& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }
  std::string str() const;
};

enum class Which : std::uint8_t { Up, Down };

// Image of the open ball around up(a)/down(a) under the value map:
// [a, a+r) for Up, (a-r, a] for Down. Requires 0 < r < min(a, 1-a).
Interval e_ball_image(const Rat& a, Which which, const Rat& r);

// Exact min distance from up(a)/down(a) to fiber c (one when the fiber has
// no segment approaching that vortex).
Rat fiber_center_distance(const Rat& a, Which which, const Rat& c);

// Witness of c in the ball image: the fiber-c point nearest to the center,
// when one lies strictly inside the ball.
std::optional<EPoint> ball_image_witness(const Rat& a, Which which, const Rat& r, const Rat& c);

enum class Extremum : std::uint8_t { LocalMin, LocalMax, LocallyConstant };

// Largest radius at which the classification below is justified: 1 at the
// up/down endpoints, 1 - t elsewhere (the gap to the nearest other-fiber
// point in the ambient metric).
Rat classification_radius(const EPoint& p);

// LocalMin at up(a), LocalMax at down(a), LocallyConstant everywhere else.
// Throws when r exceeds classification_radius(p).
Extremum e_classify(const EPoint& p, const Rat& r);

EPoint sample(Rng& rng, unsigned grid_log2 = 10);
// Random point of a fixed fiber.
EPoint sample_in_fiber(const Rat& a, Rng& rng, unsigned grid_log2 = 10);

std::string format_point(const EPoint& p);
// Literals: "up:<a>:<t>", "down:<a>:<t>", "tu:<a>:<b>:<t>", "td:<a>:<b>:<t>".
EPoint parse_point(const std::string& text);

}  // namespace exm::extremal
