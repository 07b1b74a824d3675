#include "exm/extremal.hpp"

#include <sstream>

namespace exm::extremal {

static void require_fiber(const Rat& a) {
  if (!(a > 0 && a < 1))
    throw validation_error("fiber tag " + rat_to_string(a) + " outside (0,1)");
}

static Rat spike_limit(const Rat& a, Spike spike, const Rat& b) {
  switch (spike) {
    case Spike::Up:
    case Spike::Down:
      return eps();
    case Spike::TowardDown:
      if (!(b > a)) throw validation_error("toward-down target must lie above the fiber");
      return eps() - (b - a);
    case Spike::TowardUp:
      if (!(b < a)) throw validation_error("toward-up target must lie below the fiber");
      return eps() - (a - b);
  }
  throw std::logic_error("unreachable");
}

EPoint e_make(Rat a, Spike spike, Rat b, Rat t) {
  require_fiber(a);
  if (spike == Spike::TowardDown || spike == Spike::TowardUp) require_fiber(b);
  Rat hi = spike_limit(a, spike, b);
  if (t < 0 || t > hi)
    throw validation_error("spike parameter " + rat_to_string(t) + " outside [0, " +
                           rat_to_string(hi) + "]");
  if (t == 0) return EPoint{std::move(a), Spike::Up, Rat(0), Rat(0)};
  if (spike == Spike::Up || spike == Spike::Down) b = 0;
  return EPoint{std::move(a), spike, std::move(b), std::move(t)};
}

EPoint bar_point(Rat a) { return e_make(std::move(a), Spike::Up, Rat(0)); }
EPoint up_point(Rat a) { return e_make(std::move(a), Spike::Up, eps()); }
EPoint down_point(Rat a) { return e_make(std::move(a), Spike::Down, eps()); }

EPoint tip_toward_up(Rat a, Rat b) {
  Rat hi = eps() - (a - b);
  return e_make(std::move(a), Spike::TowardUp, std::move(b), std::move(hi));
}

EPoint tip_toward_down(Rat a, Rat b) {
  Rat hi = eps() - (b - a);
  return e_make(std::move(a), Spike::TowardDown, std::move(b), std::move(hi));
}

Embedded e_embed(const EPoint& p) {
  EVortex from{ETag::Bar, p.a};
  EVortex to;
  switch (p.spike) {
    case Spike::Up: to = {ETag::Up, p.a}; break;
    case Spike::Down: to = {ETag::Down, p.a}; break;
    case Spike::TowardDown: to = {ETag::Down, p.b}; break;
    case Spike::TowardUp: to = {ETag::Up, p.b}; break;
  }
  return cobweb::make_point(std::move(from), std::move(to), p.t, eps());
}

Rat e_distance(const EPoint& p, const EPoint& q) {
  return cobweb::distance(eps(), e_embed(p), e_embed(q));
}

std::string Interval::str() const {
  return std::string(lo_closed ? "[" : "(") + rat_to_string(lo) + ", " + rat_to_string(hi) +
         (hi_closed ? "]" : ")");
}

static void require_ball_radius(const Rat& a, const Rat& r) {
  require_fiber(a);
  if (!(r > 0) || r >= a || r >= 1 - a)
    throw validation_error("ball radius " + rat_to_string(r) + " outside (0, min(a, 1-a))");
}

Interval e_ball_image(const Rat& a, Which which, const Rat& r) {
  require_ball_radius(a, r);
  if (which == Which::Up) return Interval{a, a + r, true, false};
  return Interval{a - r, a, false, true};
}

Rat fiber_center_distance(const Rat& a, Which which, const Rat& c) {
  require_fiber(a);
  require_fiber(c);
  if (which == Which::Up) {
    // Fibers above a reach toward up(a); fibers below never get closer
    // than a full thread.
    return c >= a ? Rat(c - a) : Rat(1);
  }
  return c <= a ? Rat(a - c) : Rat(1);
}

std::optional<EPoint> ball_image_witness(const Rat& a, Which which, const Rat& r, const Rat& c) {
  require_ball_radius(a, r);
  if (fiber_center_distance(a, which, c) >= r) return std::nullopt;
  if (c == a) return which == Which::Up ? up_point(a) : down_point(a);
  if (which == Which::Up) return tip_toward_up(c, a);  // fiber c, segment toward up(a)
  return tip_toward_down(c, a);
}

Rat classification_radius(const EPoint& p) {
  if ((p.spike == Spike::Up || p.spike == Spike::Down) && p.t == eps()) return Rat(1);
  return eps() - p.t;
}

Extremum e_classify(const EPoint& p, const Rat& r) {
  if (!(r > 0)) throw validation_error("classification radius must be positive");
  if (r > classification_radius(p))
    throw validation_error("radius " + rat_to_string(r) +
                           " too large for a definitive classification (max " +
                           rat_to_string(classification_radius(p)) + ")");
  if (p.spike == Spike::Up && p.t == eps()) return Extremum::LocalMin;
  if (p.spike == Spike::Down && p.t == eps()) return Extremum::LocalMax;
  return Extremum::LocallyConstant;
}

static Rat interior_rational(Rng& rng, unsigned grid_log2) {
  // Fiber tags on a dyadic grid strictly inside (0,1).
  for (;;) {
    Rat x = rng.unit_rational(grid_log2);
    if (x > 0 && x < 1) return x;
  }
}

EPoint sample(Rng& rng, unsigned grid_log2) {
  return sample_in_fiber(interior_rational(rng, grid_log2), rng, grid_log2);
}

EPoint sample_in_fiber(const Rat& a, Rng& rng, unsigned grid_log2) {
  auto interior = [&rng, grid_log2]() { return interior_rational(rng, grid_log2); };
  switch (rng.below(6)) {
    case 0: return bar_point(a);
    case 1: return rng.coin() ? up_point(a) : down_point(a);
    case 2: return e_make(a, rng.coin() ? Spike::Up : Spike::Down, rng.rational_in(eps()));
    default: {
      for (int attempt = 0; attempt < 16; ++attempt) {
        Rat b = interior();
        if (b == a) continue;
        const Spike spike = b > a ? Spike::TowardDown : Spike::TowardUp;
        Rat hi = spike_limit(a, spike, b);
        Rat t = rng.coin() ? hi : rng.rational_in(hi);
        return e_make(a, spike, b, std::move(t));
      }
      return e_make(a, Spike::Up, rng.rational_in(eps()));
    }
  }
}

std::string format_point(const EPoint& p) {
  switch (p.spike) {
    case Spike::Up: return "up:" + rat_to_string(p.a) + ":" + rat_to_string(p.t);
    case Spike::Down: return "down:" + rat_to_string(p.a) + ":" + rat_to_string(p.t);
    case Spike::TowardUp:
      return "tu:" + rat_to_string(p.a) + ":" + rat_to_string(p.b) + ":" + rat_to_string(p.t);
    case Spike::TowardDown:
      return "td:" + rat_to_string(p.a) + ":" + rat_to_string(p.b) + ":" + rat_to_string(p.t);
  }
  throw std::logic_error("unreachable");
}

EPoint parse_point(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ':')) parts.push_back(tok);
  auto r = [](const std::string& s) {
    auto v = rat_parse(s);
    if (!v) throw parse_error("bad rational '" + s + "' in point literal");
    return *v;
  };
  if (parts.size() == 3 && (parts[0] == "up" || parts[0] == "down"))
    return e_make(r(parts[1]), parts[0] == "up" ? Spike::Up : Spike::Down, r(parts[2]));
  if (parts.size() == 4 && (parts[0] == "tu" || parts[0] == "td"))
    return e_make(r(parts[1]), parts[0] == "tu" ? Spike::TowardUp : Spike::TowardDown,
                  r(parts[2]), r(parts[3]));
  throw parse_error(
      "bad extremal point literal (want up:<a>:<t>, down:<a>:<t>, tu:<a>:<b>:<t>, td:<a>:<b>:<t>): " +
      text);
}

}  // namespace exm::extremal
