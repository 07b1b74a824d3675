#include "exm/oracles.hpp"

namespace exm::audit {

SpaceOracle make_oracle(const base::BaseSpace& space) {
  SpaceOracle o;
  o.descriptor = space.describe();
  o.ultrametric_expected = space.kind == base::Kind::CantorFinite;
  o.sample = [space](Rng& rng) { return PointHandle(base::sample_point(space, rng)); };
  o.distance = [space](const PointHandle& p, const PointHandle& q) {
    return base::base_distance(space, std::any_cast<const base::BasePoint&>(p),
                               std::any_cast<const base::BasePoint&>(q));
  };
  o.format = [](const PointHandle& p) {
    return base::format_point(std::any_cast<const base::BasePoint&>(p));
  };
  return o;
}

SpaceOracle make_oracle(const hedgehog::Space& space) {
  SpaceOracle o;
  o.descriptor = space.describe();
  o.sample = [space](Rng& rng) { return PointHandle(hedgehog::sample(space, rng)); };
  o.distance = [space](const PointHandle& p, const PointHandle& q) {
    return hedgehog::distance(space, std::any_cast<const hedgehog::Point&>(p),
                              std::any_cast<const hedgehog::Point&>(q));
  };
  o.format = [](const PointHandle& p) {
    return hedgehog::format_point(std::any_cast<const hedgehog::Point&>(p));
  };
  return o;
}

static cobweb::IntPoint sample_cobweb_point(const cobweb::Space& space, Rng& rng) {
  const auto& vs = space.vortices;
  if (vs.size() < 2 || rng.below(4) == 0) return cobweb::vortex(vs[rng.below(vs.size())]);
  const auto u = vs[rng.below(vs.size())];
  std::uint32_t v = u;
  while (v == u) v = vs[rng.below(vs.size())];
  return cobweb::make_point(u, v, rng.rational_in(space.eps), space.eps);
}

SpaceOracle make_oracle(const cobweb::Space& space) {
  SpaceOracle o;
  o.descriptor = space.describe();
  o.sample = [space](Rng& rng) { return PointHandle(sample_cobweb_point(space, rng)); };
  o.distance = [space](const PointHandle& p, const PointHandle& q) {
    return cobweb::distance(space.eps, std::any_cast<const cobweb::IntPoint&>(p),
                            std::any_cast<const cobweb::IntPoint&>(q));
  };
  o.format = [](const PointHandle& p) {
    return cobweb::format_point(std::any_cast<const cobweb::IntPoint&>(p));
  };
  return o;
}

SpaceOracle make_oracle(const zcon::ZSpace& space) {
  auto sp = std::make_shared<const zcon::ZSpace>(space);
  SpaceOracle o;
  o.descriptor = sp->describe();
  o.sample = [sp](Rng& rng) { return PointHandle(zcon::sample_zpoint(*sp, rng)); };
  o.distance = [sp](const PointHandle& p, const PointHandle& q) {
    return zcon::z_distance(*sp, std::any_cast<const zcon::ZPoint&>(p),
                            std::any_cast<const zcon::ZPoint&>(q));
  };
  o.format = [](const PointHandle& p) {
    return zcon::format_zpoint(std::any_cast<const zcon::ZPoint&>(p));
  };
  return o;
}

SpaceOracle make_oracle(const invlim::Tower& tower) {
  auto tw = std::make_shared<const invlim::Tower>(tower);
  SpaceOracle o;
  o.descriptor = tw->describe();
  o.sample = [tw](Rng& rng) {
    const int level = static_cast<int>(rng.between(1, static_cast<std::uint64_t>(tw->height)));
    return PointHandle(invlim::as_limit(*tw, invlim::sample_level_point(*tw, level, rng)));
  };
  o.distance = [tw](const PointHandle& p, const PointHandle& q) {
    return invlim::limit_distance(*tw, std::any_cast<const invlim::LimitPoint&>(p),
                                  std::any_cast<const invlim::LimitPoint&>(q));
  };
  o.format = [](const PointHandle& p) {
    return invlim::format_limit_point(std::any_cast<const invlim::LimitPoint&>(p));
  };
  return o;
}

SpaceOracle make_extremal_oracle(unsigned grid_log2) {
  SpaceOracle o;
  o.descriptor = "extremal";
  o.sample = [grid_log2](Rng& rng) { return PointHandle(extremal::sample(rng, grid_log2)); };
  o.distance = [](const PointHandle& p, const PointHandle& q) {
    return extremal::e_distance(std::any_cast<const extremal::EPoint&>(p),
                                std::any_cast<const extremal::EPoint&>(q));
  };
  o.format = [](const PointHandle& p) {
    return extremal::format_point(std::any_cast<const extremal::EPoint&>(p));
  };
  return o;
}

std::vector<PointHandle> cantor_carrier(std::uint32_t max_element) {
  std::vector<PointHandle> out;
  const std::uint32_t n = max_element;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    base::CantorSet s;
    for (std::uint32_t e = 0; e < n; ++e)
      if (mask & (std::uint64_t{1} << e)) s.push_back(e + 1);
    out.emplace_back(base::BasePoint(std::move(s)));
  }
  return out;
}

LipschitzMap f_project_map(std::shared_ptr<const zcon::ZSpace> space) {
  return LipschitzMap{"f_project", [space](const PointHandle& p) {
                        return PointHandle(zcon::f_project(std::any_cast<const zcon::ZPoint&>(p)));
                      }};
}

LipschitzMap e_value_map() {
  return LipschitzMap{"e_value", [](const PointHandle& p) {
                        return PointHandle(base::BasePoint(
                            extremal::e_value(std::any_cast<const extremal::EPoint&>(p))));
                      }};
}

LipschitzMap identity_map() {
  return LipschitzMap{"identity", [](const PointHandle& p) { return p; }};
}

CauchyProbe hedgehog_spike_probe(const hedgehog::Space& space) {
  // t_k = t* - 2^-k along one spike; the limit candidate sits at t* = 1.
  const std::uint32_t spike = space.spike_count > 1 ? 1 : 0;
  hedgehog::Point limit{spike, Rat(1)};
  return CauchyProbe{"hedgehog-spike",
                     [space, spike](unsigned k) {
                       return PointHandle(
                           hedgehog::make_point(space, spike, Rat(1) - pow2_inv(k)));
                     },
                     PointHandle(limit)};
}

CauchyProbe cobweb_thread_probe(const cobweb::Space& space) {
  if (space.vortices.size() < 2)
    throw validation_error("thread probe needs at least two vortices");
  const auto u = space.vortices[0];
  const auto v = space.vortices[1];
  const Rat eps = space.eps;
  return CauchyProbe{"cobweb-thread-tail",
                     [u, v, eps](unsigned k) {
                       return PointHandle(cobweb::make_point(u, v, pow2_inv(k), eps));
                     },
                     PointHandle(cobweb::vortex(u))};
}

CauchyProbe zcon_spike_probe(std::shared_ptr<const zcon::ZSpace> space) {
  if (space->bs.kind != base::Kind::UnitIntervalQ)
    throw validation_error("spike probe is defined over a unit-interval base");
  base::BasePoint a{Rat(1, 2)};
  zcon::ZPoint limit = zcon::star_point(*space, a);
  return CauchyProbe{"zcon-star-spike",
                     [space, a](unsigned k) {
                       return PointHandle(
                           zcon::z_make(*space, a, std::nullopt, space->eps - pow2_inv(k)));
                     },
                     PointHandle(limit)};
}

namespace {

Rat positive_unit_rational(Rng& rng, unsigned grid_log2 = 8) {
  for (;;) {
    Rat r = rng.unit_rational(grid_log2);
    if (r > 0) return r;
  }
}

}  // namespace

AuditReport audit_ball_image_zcon(const zcon::ZSpace& space, std::uint64_t n_trials,
                                  std::uint64_t seed, int workers) {
  AuditReport rep;
  rep.audit = "ball-image";
  rep.space = space.describe();
  rep.seed = seed;
  rep.sample_sizes["trials"] = n_trials;

  struct Trial {
    base::BasePoint a, b;
    Rat r;
    std::uint64_t fiber_seed;
  };
  Rng rng(seed);
  std::vector<Trial> trials;
  trials.reserve(n_trials);
  for (std::uint64_t i = 0; i < n_trials; ++i)
    trials.push_back(Trial{base::sample_point(space.bs, rng), base::sample_point(space.bs, rng),
                           positive_unit_rational(rng), rng.next()});

  auto check = [&](std::size_t i) -> std::vector<Violation> {
    const base::BasePoint& a = trials[i].a;
    const base::BasePoint& b = trials[i].b;
    const Rat& r = trials[i].r;
    const std::uint64_t fiber_seed = trials[i].fiber_seed;
    std::vector<Violation> out;
    auto fail = [&](const std::string& what, const Rat& lhs, const Rat& rhs) {
      out.push_back(Violation{what,
                              {base::format_point(a), base::format_point(b), rat_to_string(r)},
                              {rat_to_string(lhs), rat_to_string(rhs)},
                              "trial " + std::to_string(i)});
    };
    const auto w = zcon::ball_image_contains(space, a, r, b);
    const zcon::ZPoint star_a = zcon::star_point(space, a);
    // Exact separation: the closest fiber-b point to star(a) is b's tip
    // toward a, at the gauge distance.
    if (!(a == b)) {
      const Rat via_tip = zcon::z_distance(space, star_a, zcon::tip_toward(space, b, a));
      if (via_tip != w.separation) fail("tip-separation", via_tip, w.separation);
      if (w.contains != (base::gauge(space.bs, a, b) < r))
        fail("membership-gauge", w.separation, r);
    }
    if (w.contains) {
      if (!w.witness) {
        fail("missing-witness", Rat(0), r);
        return out;
      }
      const Rat d = zcon::z_distance(space, star_a, *w.witness);
      if (!(d < r)) fail("witness-outside-ball", d, r);
      if (!(zcon::f_project(*w.witness) == b)) fail("witness-projects-elsewhere", d, r);
    } else {
      for (const auto& x : zcon::sample_fiber(space, b, 10, fiber_seed)) {
        const Rat d = zcon::z_distance(space, star_a, x);
        if (d < r) fail("nonmember-fiber-point-inside", d, r);
      }
    }
    // Forward inclusion: whatever lands inside the ball projects inside the
    // base ball.
    Rng ball_rng(fiber_seed ^ 0x9e3779b97f4a7c15ull);
    for (int k = 0; k < 10; ++k) {
      const auto z = zcon::sample_zpoint(space, ball_rng);
      if (zcon::z_distance(space, star_a, z) < r &&
          !(base::gauge(space.bs, zcon::f_project(z), a) < r))
        fail("ball-point-projects-outside", base::gauge(space.bs, zcon::f_project(z), a), r);
    }
    return out;
  };
  apply_checks(rep, trials.size(), workers, check);
  return rep;
}

AuditReport audit_ball_image_extremal(std::uint64_t n_trials, std::uint64_t seed, int workers) {
  AuditReport rep;
  rep.audit = "ball-image";
  rep.space = "extremal";
  rep.seed = seed;
  rep.sample_sizes["trials"] = n_trials;

  struct Trial {
    Rat a, r, c;
    extremal::Which which;
    std::uint64_t fiber_seed;
    bool boundary;  // force c onto the open endpoint of the image interval
  };
  Rng rng(seed);
  auto interior = [&rng]() {
    for (;;) {
      Rat x = rng.unit_rational(8);
      if (x > 0 && x < 1) return x;
    }
  };
  std::vector<Trial> trials;
  trials.reserve(n_trials);
  for (std::uint64_t i = 0; i < n_trials; ++i) {
    Trial t;
    t.a = interior();
    Rat cap = rat_min(t.a, Rat(1) - t.a);
    for (;;) {
      t.r = rng.rational_in(cap);
      if (t.r > 0 && t.r < cap) break;
    }
    t.which = rng.coin() ? extremal::Which::Up : extremal::Which::Down;
    t.boundary = rng.below(8) == 0;
    t.c = t.boundary ? (t.which == extremal::Which::Up ? Rat(t.a + t.r) : Rat(t.a - t.r))
                     : interior();
    t.fiber_seed = rng.next();
    trials.push_back(std::move(t));
  }

  auto check = [&](std::size_t i) -> std::vector<Violation> {
    const auto& t = trials[i];
    std::vector<Violation> out;
    auto fail = [&](const std::string& what, const Rat& lhs, const Rat& rhs) {
      out.push_back(Violation{what,
                              {rat_to_string(t.a), rat_to_string(t.c), rat_to_string(t.r),
                               t.which == extremal::Which::Up ? "up" : "down"},
                              {rat_to_string(lhs), rat_to_string(rhs)},
                              "trial " + std::to_string(i)});
    };
    const auto interval = extremal::e_ball_image(t.a, t.which, t.r);
    const bool member = interval.contains(t.c);
    const auto witness = extremal::ball_image_witness(t.a, t.which, t.r, t.c);
    const extremal::EPoint center = t.which == extremal::Which::Up ? extremal::up_point(t.a)
                                                                   : extremal::down_point(t.a);
    if (member != witness.has_value())
      fail("membership-witness-mismatch", Rat(member ? 1 : 0), Rat(witness ? 1 : 0));
    const Rat separation = extremal::fiber_center_distance(t.a, t.which, t.c);
    if (member != (separation < t.r)) fail("membership-separation-mismatch", separation, t.r);
    if (witness) {
      const Rat d = extremal::e_distance(center, *witness);
      if (!(d < t.r)) fail("witness-outside-ball", d, t.r);
      if (extremal::e_value(*witness) != t.c) fail("witness-wrong-value", extremal::e_value(*witness), t.c);
      if (d != separation) fail("witness-not-nearest", d, separation);
    } else {
      Rng fiber_rng(t.fiber_seed);
      for (int k = 0; k < 10; ++k) {
        const auto x = extremal::sample_in_fiber(t.c, fiber_rng);
        const Rat d = extremal::e_distance(center, x);
        if (d < t.r) fail("nonmember-fiber-point-inside", d, t.r);
        if (d < separation) fail("separation-not-minimal", d, separation);
      }
    }
    // Forward inclusion: values seen inside the ball stay in the interval.
    Rng ball_rng(t.fiber_seed ^ 0x9e3779b97f4a7c15ull);
    for (int k = 0; k < 10; ++k) {
      const auto q = extremal::sample(ball_rng);
      if (extremal::e_distance(center, q) < t.r && !interval.contains(extremal::e_value(q)))
        fail("ball-point-value-outside", extremal::e_value(q), t.r);
    }
    return out;
  };
  apply_checks(rep, trials.size(), workers, check);
  return rep;
}

AuditReport audit_classify_extremal(std::uint64_t n_points, std::uint64_t seed, int workers) {
  AuditReport rep;
  rep.audit = "extremum-classification";
  rep.space = "extremal";
  rep.seed = seed;
  rep.sample_sizes["points"] = n_points;

  struct Trial {
    extremal::EPoint p;
    Rat r;
    extremal::Extremum expected;
  };
  using extremal::Extremum;
  using extremal::Spike;
  Rng rng(seed);
  auto interior = [&rng]() {
    for (;;) {
      Rat x = rng.unit_rational(8);
      if (x > 0 && x < 1) return x;
    }
  };
  auto valid_radius = [&rng](const extremal::EPoint& p) {
    const Rat cap = extremal::classification_radius(p);
    for (;;) {
      Rat r = rng.rational_in(cap);
      if (r > 0) return r;
    }
  };
  std::vector<Trial> trials;
  trials.reserve(n_points * 3);
  for (std::uint64_t i = 0; i < n_points; ++i) {
    const Rat a = interior();
    auto up = extremal::up_point(a);
    auto down = extremal::down_point(a);
    trials.push_back(Trial{up, valid_radius(up), Extremum::LocalMin});
    trials.push_back(Trial{down, valid_radius(down), Extremum::LocalMax});
    for (;;) {
      auto p = extremal::sample(rng, 8);
      if ((p.spike == Spike::Up || p.spike == Spike::Down) && p.t == extremal::eps()) continue;
      trials.push_back(Trial{p, valid_radius(p), Extremum::LocallyConstant});
      break;
    }
  }

  auto check = [&](std::size_t i) -> std::vector<Violation> {
    const auto& t = trials[i];
    std::vector<Violation> out;
    auto fail = [&](const std::string& what, const std::string& lhs, const std::string& rhs) {
      out.push_back(Violation{what,
                              {extremal::format_point(t.p), rat_to_string(t.r)},
                              {lhs, rhs},
                              "trial " + std::to_string(i)});
    };
    const auto got = extremal::e_classify(t.p, t.r);
    if (got != t.expected) {
      fail("classification", std::to_string(static_cast<int>(got)),
           std::to_string(static_cast<int>(t.expected)));
      return out;
    }
    const Rat& a = t.p.a;
    // Exact in-ball samples of the value map around p.
    std::vector<std::pair<extremal::EPoint, Rat>> inside;  // (point, distance)
    auto push_same_spike = [&](const Rat& tt) {
      if (tt < 0) return;
      auto q = extremal::e_make(a, t.p.spike, t.p.b, tt);
      inside.emplace_back(q, extremal::e_distance(t.p, q));
    };
    const Rat half = t.r / 2;
    push_same_spike(t.p.t - half);
    const Rat limit = t.p.spike == Spike::Up || t.p.spike == Spike::Down
                          ? extremal::eps()
                          : extremal::eps() - rat_abs(t.p.b - a);
    if (t.p.t + half <= limit) push_same_spike(t.p.t + half);
    if (t.expected == Extremum::LocalMin || t.expected == Extremum::LocalMax) {
      // A strictly-different value inside the ball: the tip of a fiber on the
      // approaching side, offset by half the gap to the carrier boundary so
      // it stays inside (0,1).
      const bool up = t.expected == Extremum::LocalMin;
      const Rat step = rat_min(t.r, up ? Rat(1 - a) : a) / 2;
      Rat c = up ? Rat(a + step) : Rat(a - step);
      auto tip = up ? extremal::tip_toward_up(c, a) : extremal::tip_toward_down(c, a);
      inside.emplace_back(tip, extremal::e_distance(t.p, tip));
    }
    bool strict_seen = false;
    for (const auto& [q, d] : inside) {
      if (!(d < t.r)) continue;  // constructions outside the open ball
      const Rat& v = extremal::e_value(q);
      switch (t.expected) {
        case Extremum::LocalMin:
          if (v < a) fail("min-violated", rat_to_string(v), rat_to_string(a));
          if (v > a) strict_seen = true;
          break;
        case Extremum::LocalMax:
          if (v > a) fail("max-violated", rat_to_string(v), rat_to_string(a));
          if (v < a) strict_seen = true;
          break;
        case Extremum::LocallyConstant:
          if (v != a) fail("constancy-violated", rat_to_string(v), rat_to_string(a));
          break;
      }
    }
    // An extremum is strict: the ball image always reaches past the value
    // at the center.
    if (t.expected != Extremum::LocallyConstant && !strict_seen)
      fail("extremum-not-strict", "0", "1");
    return out;
  };
  apply_checks(rep, trials.size(), workers, check);
  return rep;
}

}  // namespace exm::audit
