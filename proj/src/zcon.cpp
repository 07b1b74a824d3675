#include "exm/zcon.hpp"

#include <algorithm>
#include <sstream>

namespace exm::zcon {

ZSpace make_zspace(base::BaseSpace bs, Rat eps) {
  if (!(eps > 1)) throw validation_error("zcon needs eps > 1, got " + rat_to_string(eps));
  return ZSpace{base::truncate(std::move(bs)), std::move(eps)};
}

static Rat space_gauge(const ZSpace& space, const base::BasePoint& x, const base::BasePoint& y) {
  return base::gauge(space.bs, x, y);
}

ZPoint z_make(const ZSpace& space, base::BasePoint fiber,
              std::optional<base::BasePoint> toward, Rat t) {
  base::require_point(space.bs, fiber);
  if (toward) base::require_point(space.bs, *toward);
  return kernel_make(space.eps, std::move(fiber), std::move(toward), std::move(t),
                     [&space](const base::BasePoint& b, const base::BasePoint& a) {
                       return space_gauge(space, b, a);
                     });
}

ZEmbedded z_embed(const ZSpace& space, const ZPoint& p) {
  return kernel_embed(space.eps, p);
}

Rat z_distance(const ZSpace& space, const ZPoint& p, const ZPoint& q) {
  return kernel_distance(space.eps, p, q);
}

Rat z_distance_truncated(const ZSpace& space, const ZPoint& p, const ZPoint& q) {
  Rat d = z_distance(space, p, q);
  return d > 1 ? Rat(1) : d;
}

ZPoint bar_point(const ZSpace& space, base::BasePoint a) {
  return z_make(space, std::move(a), std::nullopt, Rat(0));
}

ZPoint star_point(const ZSpace& space, base::BasePoint a) {
  Rat e = space.eps;
  return z_make(space, std::move(a), std::nullopt, std::move(e));
}

ZPoint tip_toward(const ZSpace& space, base::BasePoint a, base::BasePoint b) {
  Rat hi = space.eps - space_gauge(space, b, a);
  return z_make(space, std::move(a), std::move(b), std::move(hi));
}

FiberMinDistance fiber_min_distance(const ZSpace& space, const base::BasePoint& a,
                                    const base::BasePoint& b) {
  if (a == b) throw validation_error("fiber_min_distance needs distinct fibers");
  FiberMinDistance out{space_gauge(space, a, b), tip_toward(space, a, b), star_point(space, b)};
  return out;
}

BallImageWitness ball_image_contains(const ZSpace& space, const base::BasePoint& a,
                                     const Rat& r, const base::BasePoint& b) {
  if (!(r > 0)) throw validation_error("ball radius must be positive");
  BallImageWitness out;
  if (a == b) {
    out.contains = true;
    out.witness = star_point(space, a);
    out.separation = Rat(0);
    return out;
  }
  out.separation = space_gauge(space, a, b);
  out.contains = out.separation < r;
  // The nearest fiber-b point to star(a) is b's spike tip toward a.
  if (out.contains) out.witness = tip_toward(space, b, a);
  return out;
}

static ZPoint sample_fiber_point(const ZSpace& space, const base::BasePoint& a, Rng& rng) {
  switch (rng.below(6)) {
    case 0: return bar_point(space, a);
    case 1: return star_point(space, a);
    case 2: return z_make(space, a, std::nullopt, rng.rational_in(space.eps));
    default: {
      // Toward spike: pick a distinct target, fall back to the star spike on
      // degenerate carriers.
      for (int attempt = 0; attempt < 16; ++attempt) {
        base::BasePoint b = base::sample_point(space.bs, rng);
        if (b == a) continue;
        Rat hi = space.eps - space_gauge(space, b, a);
        Rat t = rng.coin() ? hi : rng.rational_in(hi);
        return z_make(space, a, std::move(b), std::move(t));
      }
      return z_make(space, a, std::nullopt, rng.rational_in(space.eps));
    }
  }
}

std::vector<ZPoint> sample_fiber(const ZSpace& space, const base::BasePoint& a,
                                 std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ZPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_fiber_point(space, a, rng));
  return out;
}

ZPoint sample_zpoint(const ZSpace& space, Rng& rng) {
  base::BasePoint a = base::sample_point(space.bs, rng);
  return sample_fiber_point(space, a, rng);
}

std::vector<ZPoint> skeleton_sample(const ZSpace& space, std::uint32_t grid_den,
                                    const Rat& spacing) {
  if (space.bs.kind != base::Kind::UnitIntervalQ)
    throw validation_error("skeleton sample is defined over a unit-interval base");
  if (!(spacing > 0)) throw validation_error("skeleton spacing must be positive");
  std::vector<ZPoint> out;
  auto chain = [&](const base::BasePoint& a, std::optional<base::BasePoint> toward, const Rat& hi) {
    for (Rat t(0); t < hi; t += spacing) out.push_back(z_make(space, a, toward, t));
    out.push_back(z_make(space, a, toward, hi));
  };
  for (std::uint32_t k = 0; k <= grid_den; ++k) {
    base::BasePoint a{Rat(k, grid_den)};
    chain(a, std::nullopt, space.eps);
    if (k < grid_den) {
      base::BasePoint b{Rat(k + 1, grid_den)};
      chain(a, b, space.eps - space_gauge(space, b, a));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ZPoint> star_grid_sample(const ZSpace& space, std::uint32_t grid_den) {
  if (space.bs.kind != base::Kind::UnitIntervalQ)
    throw validation_error("star grid sample is defined over a unit-interval base");
  std::vector<ZPoint> out;
  out.reserve(grid_den + 1);
  for (std::uint32_t k = 0; k <= grid_den; ++k)
    out.push_back(star_point(space, Rat(k, grid_den)));
  return out;
}

std::string format_zpoint(const ZPoint& p) {
  if (!p.toward) return "star:" + base::format_point(p.fiber) + ":" + rat_to_string(p.t);
  return "toward:" + base::format_point(p.fiber) + ":" + base::format_point(*p.toward) + ":" +
         rat_to_string(p.t);
}

ZPoint parse_zpoint(const ZSpace& space, const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ':')) parts.push_back(tok);
  if (parts.size() == 3 && parts[0] == "star") {
    auto t = rat_parse(parts[2]);
    if (!t) throw parse_error("bad spike parameter: " + parts[2]);
    return z_make(space, base::parse_point(space.bs, parts[1]), std::nullopt, *t);
  }
  if (parts.size() == 4 && parts[0] == "toward") {
    auto t = rat_parse(parts[3]);
    if (!t) throw parse_error("bad spike parameter: " + parts[3]);
    return z_make(space, base::parse_point(space.bs, parts[1]),
                  base::parse_point(space.bs, parts[2]), *t);
  }
  throw parse_error("bad fiber-point literal (want star:<a>:<t> or toward:<a>:<b>:<t>): " + text);
}

}  // namespace exm::zcon
