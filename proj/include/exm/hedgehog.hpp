#pragma once

#include "exm/error.hpp"
#include "exm/rat.hpp"
#include "exm/rng.hpp"

#include <cstdint>
#include <string>

namespace exm::hedgehog {

// One center, spike_count spikes of length eps. The metric is |t-s| within
// a spike and t+s across spikes; it does not depend on spike_count.
struct Space {
  std::uint32_t spike_count = 8;
  Rat eps{2};

  std::string describe() const {
    return "hedgehog(spikes=" + std::to_string(spike_count) + ",eps=" + rat_to_string(eps) + ")";
  }
};

struct Point {
  std::uint32_t spike = 0;
  Rat t{0};

  friend bool operator==(const Point& a, const Point& b) = default;
};

// t = 0 is the center no matter which spike names it; canonical spike is 0.
inline Point canonicalize(Point p) {
  if (p.t == 0) p.spike = 0;
  return p;
}

inline Point make_point(const Space& space, std::uint32_t spike, Rat t) {
  if (t < 0 || t > space.eps)
    throw validation_error("spike parameter " + rat_to_string(t) + " outside [0, eps]");
  if (spike >= space.spike_count)
    throw validation_error("spike " + std::to_string(spike) + " outside carrier");
  return canonicalize(Point{spike, std::move(t)});
}

inline Rat distance(const Space& space, const Point& p, const Point& q) {
  if (p.t > space.eps || q.t > space.eps || p.t < 0 || q.t < 0)
    throw validation_error("point outside hedgehog carrier");
  if (p.spike == q.spike || p.t == 0 || q.t == 0) return rat_abs(p.t - q.t);
  return p.t + q.t;
}

inline Point sample(const Space& space, Rng& rng) {
  auto spike = static_cast<std::uint32_t>(rng.below(space.spike_count));
  return canonicalize(Point{spike, rng.rational_in(space.eps)});
}

inline std::string format_point(const Point& p) {
  return std::to_string(p.spike) + ":" + rat_to_string(p.t);
}

}  // namespace exm::hedgehog
