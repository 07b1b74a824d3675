#include "exm/invlimit.hpp"

#include <algorithm>
#include <set>

namespace exm::invlim {

int compare(const LevelPoint& a, const LevelPoint& b) {
  if (a.level != b.level) return a.level < b.level ? -1 : 1;
  if (a.level == 1) {
    if (a.base < b.base) return -1;
    if (b.base < a.base) return 1;
    return 0;
  }
  if (int c = compare(*a.fiber, *b.fiber); c != 0) return c;
  const bool at = static_cast<bool>(a.toward), bt = static_cast<bool>(b.toward);
  if (at != bt) return at ? 1 : -1;  // star spike sorts first
  if (at)
    if (int c = compare(*a.toward, *b.toward); c != 0) return c;
  if (a.t != b.t) return a.t < b.t ? -1 : 1;
  return 0;
}

Tower make_tower(base::BaseSpace bs, int height, Rat eps) {
  if (height < 1) throw validation_error("tower height must be at least 1");
  if (!(eps > 1)) throw validation_error("tower needs eps > 1, got " + rat_to_string(eps));
  return Tower{base::truncate(std::move(bs)), height, std::move(eps)};
}

LevelPtr level1(const Tower& tower, base::BasePoint p) {
  base::require_point(tower.bs, p);
  auto out = std::make_shared<LevelPoint>();
  out->level = 1;
  out->base = std::move(p);
  return out;
}

LevelPtr make_zlevel(const Tower& tower, LevelPtr fiber, LevelPtr toward, Rat t) {
  if (!fiber) throw validation_error("level point needs a fiber tag");
  if (fiber->level + 1 > tower.height)
    throw validation_error("level " + std::to_string(fiber->level + 1) + " exceeds tower height");
  if (toward && toward->level != fiber->level)
    throw validation_error("spike target must sit on the fiber's level");
  if (toward && equal(*toward, *fiber))
    throw validation_error("toward spike must aim at a different point");
  Rat hi = toward ? Rat(tower.eps - level_distance(tower, *toward, *fiber)) : tower.eps;
  if (t < 0 || t > hi)
    throw validation_error("spike parameter " + rat_to_string(t) + " outside [0, " +
                           rat_to_string(hi) + "]");
  auto out = std::make_shared<LevelPoint>();
  out->level = fiber->level + 1;
  out->fiber = std::move(fiber);
  if (t != 0) {
    out->toward = std::move(toward);
    out->t = std::move(t);
  }
  return out;
}

Rat level_distance(const Tower& tower, const LevelPoint& a, const LevelPoint& b) {
  if (a.level != b.level) throw validation_error("level distance needs points of equal level");
  if (a.level == 1) return base::gauge(tower.bs, a.base, b.base);
  zcon::Rep<PointRef> x{PointRef{a.fiber},
                        a.toward ? std::optional<PointRef>(PointRef{a.toward}) : std::nullopt,
                        a.t};
  zcon::Rep<PointRef> y{PointRef{b.fiber},
                        b.toward ? std::optional<PointRef>(PointRef{b.toward}) : std::nullopt,
                        b.t};
  Rat d = zcon::kernel_distance(tower.eps, x, y);
  return d > 1 ? Rat(1) : d;
}

LevelPtr bond(const LevelPoint& p) {
  if (p.level < 2) throw validation_error("level-1 points have no bonding image");
  return p.fiber;
}

LevelPtr star_lift(const Tower& tower, LevelPtr p) {
  if (!p) throw validation_error("star lift needs a point");
  if (p->level >= tower.height)
    throw validation_error("star lift above the tower height");
  Rat e = tower.eps;
  return make_zlevel(tower, std::move(p), nullptr, std::move(e));
}

LimitPoint as_limit(const Tower& tower, LevelPtr rep) {
  if (!rep) throw validation_error("limit point needs a representative");
  while (rep->level > 1 && !rep->toward && rep->t == tower.eps) rep = rep->fiber;
  return LimitPoint{std::move(rep)};
}

LevelPtr project(const Tower& tower, const LimitPoint& x, int n) {
  if (n < 1 || n > tower.height)
    throw validation_error("projection level " + std::to_string(n) + " outside [1, height]");
  LevelPtr cur = x.rep;
  while (cur->level > n) cur = cur->fiber;
  while (cur->level < n) cur = star_lift(tower, cur);
  return cur;
}

Rat limit_distance(const Tower& tower, const LimitPoint& x, const LimitPoint& u) {
  const int m = std::max(x.rep->level, u.rep->level);
  LevelPtr a = project(tower, x, m);
  LevelPtr b = project(tower, u, m);
  if (equal(*a, *b)) return Rat(0);  // identical threads
  // Distinct threads carry distinct star vortices at every level past m, so
  // the tail supremum is exactly 2^-(m+1).
  Rat best = pow2_inv(static_cast<unsigned>(m) + 1);
  for (int n = m;; --n) {
    best = rat_max(best, level_distance(tower, *a, *b) * pow2_inv(static_cast<unsigned>(n)));
    if (n == 1) break;
    a = a->fiber;
    b = b->fiber;
  }
  return best;
}

Enclosure prefix_enclosure(const Tower& tower, const LimitPoint& x, const LimitPoint& u, int K) {
  if (K < 1 || K > tower.height)
    throw validation_error("enclosure depth outside [1, height]");
  Rat lo(0);
  for (int n = 1; n <= K; ++n)
    lo = rat_max(lo, level_distance(tower, *project(tower, x, n), *project(tower, u, n)) *
                         pow2_inv(static_cast<unsigned>(n)));
  // The tail above K vanishes exactly when the threads agree from level K on,
  // which star tails reduce to agreement at level max(K, rep levels).
  const int kp = std::max({K, x.rep->level, u.rep->level});
  const bool tail_vanishes = equal(*project(tower, x, kp), *project(tower, u, kp));
  Rat hi = tail_vanishes ? lo : rat_max(lo, pow2_inv(static_cast<unsigned>(K) + 1));
  return Enclosure{std::move(lo), std::move(hi)};
}

EconomicalReport economical_report(const Tower& tower, const std::vector<LimitPoint>& sample) {
  EconomicalReport rep;
  rep.sample_size = sample.size();
  if (sample.empty()) return rep;

  std::set<Rat> values;
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i; j < sample.size(); ++j)
      values.insert(limit_distance(tower, sample[i], sample[j]));
  rep.distinct_distances = values.size();

  auto point_less = [](const LevelPtr& a, const LevelPtr& b) { return compare(*a, *b) < 0; };
  rep.sup_projections = 0;
  rep.sum_sq_projections = 0;
  bool any_tail_distinct = false;
  for (int n = 1; n <= tower.height; ++n) {
    std::vector<LevelPtr> proj;
    proj.reserve(sample.size());
    for (const auto& x : sample) proj.push_back(project(tower, x, n));
    std::set<Rat> level_values;
    for (std::size_t i = 0; i < proj.size(); ++i)
      for (std::size_t j = i; j < proj.size(); ++j)
        level_values.insert(level_distance(tower, *proj[i], *proj[j]));
    rep.per_level_distinct.push_back(level_values.size());
    std::set<LevelPtr, decltype(point_less)> distinct_proj(point_less);
    for (const auto& p : proj) distinct_proj.insert(p);
    rep.sup_projections = std::max(rep.sup_projections, distinct_proj.size());
    rep.sum_sq_projections += distinct_proj.size() * distinct_proj.size();
    if (n == tower.height && distinct_proj.size() > 1) any_tail_distinct = true;
  }
  // Virtual level height+1: iterated star lifts, distances in {0, 1}.
  rep.tail_distinct = any_tail_distinct ? 2 : 1;
  rep.per_level_sum = rep.tail_distinct;
  for (auto c : rep.per_level_distinct) rep.per_level_sum += c;
  rep.sum_bound_holds = rep.distinct_distances <= rep.per_level_sum;
  return rep;
}

LevelPtr sample_level_point(const Tower& tower, int level, Rng& rng) {
  if (level < 1 || level > tower.height) throw validation_error("sample level outside tower");
  if (level == 1) return level1(tower, base::sample_point(tower.bs, rng));
  LevelPtr fiber = sample_level_point(tower, level - 1, rng);
  switch (rng.below(4)) {
    case 0: {
      Rat e = tower.eps;
      return make_zlevel(tower, std::move(fiber), nullptr, std::move(e));  // star point
    }
    case 1:
      return make_zlevel(tower, std::move(fiber), nullptr, rng.rational_in(tower.eps));
    default: {
      for (int attempt = 0; attempt < 16; ++attempt) {
        LevelPtr toward = sample_level_point(tower, level - 1, rng);
        if (equal(*toward, *fiber)) continue;
        Rat hi = tower.eps - level_distance(tower, *toward, *fiber);
        Rat t = rng.coin() ? hi : rng.rational_in(hi);
        return make_zlevel(tower, std::move(fiber), std::move(toward), std::move(t));
      }
      return make_zlevel(tower, std::move(fiber), nullptr, rng.rational_in(tower.eps));
    }
  }
}

std::vector<LimitPoint> sample_limit_points(const Tower& tower, std::size_t count,
                                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LimitPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int level = static_cast<int>(rng.between(1, static_cast<std::uint64_t>(tower.height)));
    out.push_back(as_limit(tower, sample_level_point(tower, level, rng)));
  }
  return out;
}

std::string format_level_point(const LevelPoint& p) {
  if (p.level == 1) return "L1:" + base::format_point(p.base);
  std::string out = "L" + std::to_string(p.level) + "{fiber=" + format_level_point(*p.fiber);
  if (p.toward)
    out += ",toward=" + format_level_point(*p.toward);
  else
    out += ",star";
  out += ",t=" + rat_to_string(p.t) + "}";
  return out;
}

}  // namespace exm::invlim
