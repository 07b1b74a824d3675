#include "exm/suite.hpp"

#include "exm/audit.hpp"
#include "exm/base_space.hpp"
#include "exm/cobweb.hpp"
#include "exm/error.hpp"
#include "exm/extremal.hpp"
#include "exm/hedgehog.hpp"
#include "exm/invlimit.hpp"
#include "exm/oracles.hpp"
#include "exm/report_json.hpp"
#include "exm/zcon.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

namespace exm::suite {

namespace {

using audit::AuditReport;
using audit::PointHandle;
using audit::SpaceOracle;

struct Ctx {
  const SuiteOptions& opt;
  std::uint64_t checks = 0;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  // Passing audit: zero violations expected.
  void require_clean(const AuditReport& rep, const std::string& label) {
    checks += rep.attempted;
    if (!rep.ok()) {
      std::ostringstream msg;
      msg << label << ": " << rep.violations.size() << " violation(s)";
      if (!rep.violations.empty()) {
        const auto& v = rep.violations.front();
        msg << ", first: " << v.check;
        for (const auto& p : v.points) msg << " " << p;
        msg << " [";
        for (std::size_t i = 0; i < v.values.size(); ++i) msg << (i ? " vs " : "") << v.values[i];
        msg << "]";
      }
      failures.push_back(msg.str());
    }
  }
  // Negative control: the audit must detect trouble.
  void require_violations(const AuditReport& rep, const std::string& label) {
    ++checks;
    if (rep.violations.empty()) failures.push_back(label + ": expected violations, saw none");
  }
};

base::BaseSpace corrupted_table_space() {
  // d(0,2) = 2 breaks the triangle through the middle point.
  std::vector<std::vector<Rat>> t = {{Rat(0), Rat(1, 2), Rat(2)},
                                     {Rat(1, 2), Rat(0), Rat(1, 2)},
                                     {Rat(2), Rat(1, 2), Rat(0)}};
  return base::finite_discrete_unchecked(std::move(t));
}

cobweb::Space six_vortex_cobweb() { return cobweb::Space{{0, 1, 2, 3, 4, 5}, Rat(2)}; }

std::shared_ptr<const zcon::ZSpace> unit_zspace() {
  static const auto space =
      std::make_shared<const zcon::ZSpace>(zcon::make_zspace(base::unit_interval(), Rat(2)));
  return space;
}

std::vector<PointHandle> to_handles(const std::vector<zcon::ZPoint>& pts) {
  std::vector<PointHandle> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(p);
  return out;
}

base::BasePoint distinct_base_point(const base::BaseSpace& bs, const base::BasePoint& other,
                                    Rng& rng) {
  for (;;) {
    base::BasePoint p = base::sample_point(bs, rng);
    if (!(p == other)) return p;
  }
}

// --- criterion bodies -------------------------------------------------------

void criterion_cobweb_oracle(Ctx& ctx) {
  Rng rng(ctx.opt.seed);
  const std::array<Rat, 3> eps_choices = {Rat(1), Rat(3, 2), Rat(2)};
  for (int i = 0; i < 500; ++i) {
    cobweb::Space space;
    const auto nv = rng.between(2, 8);
    space.vortices.clear();
    for (std::uint64_t v = 0; v < nv; ++v) space.vortices.push_back(static_cast<std::uint32_t>(v));
    space.eps = eps_choices[rng.below(3)];
    const auto oracle = audit::make_oracle(space);
    const auto p = std::any_cast<cobweb::IntPoint>(oracle.sample(rng));
    const auto q = std::any_cast<cobweb::IntPoint>(oracle.sample(rng));
    const Rat closed = cobweb::distance(space.eps, p, q);
    const Rat reference = cobweb::oracle_distance(space.eps, space.vortices, p, q);
    ctx.require(closed == reference,
                "instance " + std::to_string(i) + ": closed form " + rat_to_string(closed) +
                    " != oracle " + rat_to_string(reference) + " for " +
                    cobweb::format_point(p) + ", " + cobweb::format_point(q));
  }
  // Near-tip route around the shared vortex: the two-hop detour wins.
  const Rat eps(2);
  const auto p = cobweb::make_point<std::uint32_t>(0, 1, rat("19/10"), eps);
  const auto q = cobweb::make_point<std::uint32_t>(0, 2, rat("19/10"), eps);
  const Rat closed = cobweb::distance(eps, p, q);
  const Rat reference = cobweb::oracle_distance(eps, {0, 1, 2}, p, q);
  ctx.require(closed == rat("11/5"), "near-tip distance is " + rat_to_string(closed));
  ctx.require(reference == rat("11/5"), "near-tip oracle is " + rat_to_string(reference));
  const auto path = cobweb::witness_path(eps, p, q);
  ctx.require(path.size() == 4 && path[1] == cobweb::vortex<std::uint32_t>(1) &&
                  path[2] == cobweb::vortex<std::uint32_t>(2),
              "near-tip witness path shape");
}

void criterion_metric_axioms(Ctx& ctx) {
  const std::uint64_t n = 10000;
  const auto seed = ctx.opt.seed;
  const int w = ctx.opt.workers;
  ctx.require_clean(audit::audit_metric(audit::make_oracle(base::unit_interval()), n, seed, w),
                    "unit_interval");
  ctx.require_clean(audit::audit_metric(audit::make_oracle(base::cantor_finite(6)), n, seed, w),
                    "cantor");
  ctx.require_clean(
      audit::audit_metric(audit::make_oracle(hedgehog::Space{8, Rat(2)}), n, seed, w), "hedgehog");
  ctx.require_clean(audit::audit_metric(audit::make_oracle(six_vortex_cobweb()), n, seed, w),
                    "cobweb");
  ctx.require_clean(audit::audit_metric(audit::make_oracle(*unit_zspace()), n, seed, w), "zcon");
  ctx.require_clean(audit::audit_metric(audit::make_extremal_oracle(), n, seed, w), "extremal");
  ctx.require_clean(
      audit::audit_metric(audit::make_oracle(invlim::make_tower(base::unit_interval(), 3, Rat(2))),
                          n, seed, w),
      "tower");
  if (ctx.opt.inject_corruption)
    ctx.require_clean(audit::audit_metric(audit::make_oracle(corrupted_table_space()), n, seed, w),
                      "injected-corruption");
}

void criterion_cantor_ultrametric(Ctx& ctx) {
  const auto cantor6 = audit::make_oracle(base::cantor_finite(6));
  ctx.require_clean(
      audit::audit_ultrametric_exhaustive(cantor6, audit::cantor_carrier(6), ctx.opt.workers),
      "exhaustive strong triangle");
  const auto cantor12 = audit::make_oracle(base::cantor_finite(12));
  Rng rng(ctx.opt.seed);
  for (int family = 0; family < 200; ++family) {
    const auto n = rng.between(2, 64);
    const auto family_seed = rng.next();
    ctx.require_clean(audit::audit_distinct_distances(cantor12, n, family_seed),
                      "distinct-distance family " + std::to_string(family));
  }
}

void criterion_fiber_identities(Ctx& ctx) {
  const auto sp = unit_zspace();
  const auto& space = *sp;
  const int w = ctx.opt.workers;
  ctx.require_clean(audit::audit_lipschitz(audit::f_project_map(sp), audit::make_oracle(space),
                                           audit::make_oracle(space.bs), 10000, ctx.opt.seed, w),
                    "lipschitz f_project");
  Rng rng(ctx.opt.seed);
  for (int i = 0; i < 100; ++i) {
    const base::BasePoint a = base::sample_point(space.bs, rng);
    const base::BasePoint b = distinct_base_point(space.bs, a, rng);
    const auto fm = zcon::fiber_min_distance(space, a, b);
    const Rat expected = base::gauge(space.bs, a, b);
    ctx.require(fm.value == expected, "fiber min != gauge at pair " + std::to_string(i));
    const Rat achieved = zcon::z_distance(space, fm.witness_in_a, fm.witness_in_b);
    ctx.require(achieved == fm.value, "witness misses fiber min at pair " + std::to_string(i));
    ctx.require(zcon::fiber_min_distance(space, b, a).value == fm.value,
                "fiber min asymmetric at pair " + std::to_string(i));
    const auto xs = zcon::sample_fiber(space, a, 100, rng.next());
    const auto us = zcon::sample_fiber(space, b, 100, rng.next());
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (zcon::z_distance(space, xs[k], us[k]) < fm.value) {
        ctx.failures.push_back("cross-fiber pair below fiber min at pair " + std::to_string(i));
        break;
      }
    }
    ++ctx.checks;
  }
  ctx.require_clean(audit::audit_ball_image_zcon(space, 100, ctx.opt.seed, w), "ball image");
}

void criterion_star_discreteness(Ctx& ctx) {
  const auto& space = *unit_zspace();
  Rng rng(ctx.opt.seed);
  for (int i = 0; i < 50; ++i) {
    const base::BasePoint a = base::sample_point(space.bs, rng);
    const base::BasePoint b = distinct_base_point(space.bs, a, rng);
    const auto sa = zcon::star_point(space, a);
    const auto sb = zcon::star_point(space, b);
    ctx.require(zcon::z_distance(space, sa, sb) == 2,
                "star pair " + std::to_string(i) + " not at distance 2");
    ctx.require(zcon::z_distance_truncated(space, sa, sb) == 1,
                "truncated star pair " + std::to_string(i) + " not at distance 1");
  }
}

void criterion_tower(Ctx& ctx) {
  const auto tower = invlim::make_tower(base::unit_interval(), 3, Rat(2));
  const auto points = invlim::sample_limit_points(tower, 2000, ctx.opt.seed);

  for (std::size_t i = 0; i < 1000; ++i) {
    const auto& x = points[i];
    for (int n = 1; n < tower.height; ++n) {
      const auto lower = invlim::project(tower, x, n);
      const auto upper = invlim::project(tower, x, n + 1);
      if (!invlim::equal(*lower, *invlim::bond(*upper))) {
        ctx.failures.push_back("thread consistency fails at point " + std::to_string(i) +
                               " level " + std::to_string(n));
        break;
      }
    }
    ++ctx.checks;
  }

  for (std::size_t i = 0; i < 1000; ++i) {
    const auto& x = points[2 * i % points.size()];
    const auto& u = points[(2 * i + 1) % points.size()];
    const Rat d = invlim::limit_distance(tower, x, u);
    for (int K = 1; K <= 3; ++K) {
      const auto enc = invlim::prefix_enclosure(tower, x, u, K);
      const bool inside = enc.lo <= d && d <= enc.hi;
      const bool narrow = enc.hi - enc.lo <= pow2_inv(static_cast<unsigned>(K) + 1);
      if (!inside || !narrow) {
        ctx.failures.push_back("enclosure fails at pair " + std::to_string(i) + " K=" +
                               std::to_string(K) + ": d=" + rat_to_string(d) + " in [" +
                               rat_to_string(enc.lo) + ", " + rat_to_string(enc.hi) + "]");
        break;
      }
    }
    ++ctx.checks;
  }

  Rng rng(ctx.opt.seed + 1);
  for (int s = 0; s < 100; ++s) {
    const auto n = rng.between(2, 64);
    const auto sample = invlim::sample_limit_points(tower, n, rng.next());
    const auto rep = invlim::economical_report(tower, sample);
    ctx.require(rep.sum_bound_holds,
                "distinct-distance sum bound fails on sample " + std::to_string(s) + " (" +
                    std::to_string(rep.distinct_distances) + " > " +
                    std::to_string(rep.per_level_sum) + ")");
  }
}

void criterion_chain_proxy(Ctx& ctx) {
  const auto& space = *unit_zspace();
  const auto oracle = audit::make_oracle(space);
  const auto skeleton = to_handles(zcon::skeleton_sample(space, 64, Rat(1, 8)));
  const auto rep =
      audit::audit_chain(oracle, skeleton, Rat(1, 8), ctx.opt.workers);
  ctx.require(!rep.stats.empty() && rep.stats.back().second == "1",
              "skeleton chain components: " +
                  (rep.stats.empty() ? std::string("?") : rep.stats.back().second));

  const auto stars = to_handles(zcon::star_grid_sample(space, 64));
  const auto rep_stars = audit::audit_chain(oracle, stars, Rat(1, 8), ctx.opt.workers);
  ctx.require(!rep_stars.stats.empty() &&
                  rep_stars.stats.back().second == std::to_string(stars.size()),
              "stars-only components != point count");
}

void criterion_extremal(Ctx& ctx) {
  const int w = ctx.opt.workers;
  ctx.require_clean(audit::audit_classify_extremal(100, ctx.opt.seed, w), "classification");
  ctx.require_clean(audit::audit_ball_image_extremal(100, ctx.opt.seed, w), "ball image");
  ctx.require_clean(audit::audit_lipschitz(audit::e_value_map(), audit::make_extremal_oracle(),
                                           audit::make_oracle(base::unit_interval()), 10000,
                                           ctx.opt.seed, w),
                    "lipschitz e_value");
}

void criterion_completeness(Ctx& ctx) {
  const hedgehog::Space hh{8, Rat(2)};
  ctx.require_clean(
      audit::audit_cauchy(audit::make_oracle(hh), {audit::hedgehog_spike_probe(hh)}, 20),
      "hedgehog probe");
  const auto cw = six_vortex_cobweb();
  ctx.require_clean(
      audit::audit_cauchy(audit::make_oracle(cw), {audit::cobweb_thread_probe(cw)}, 20),
      "cobweb probe");
  const auto sp = unit_zspace();
  ctx.require_clean(
      audit::audit_cauchy(audit::make_oracle(*sp), {audit::zcon_spike_probe(sp)}, 20),
      "zcon probe");
}

void criterion_negative_controls(Ctx& ctx) {
  ctx.require_violations(
      audit::audit_metric(audit::make_oracle(corrupted_table_space()), 500, ctx.opt.seed, 1),
      "corrupted table");
  ctx.require_violations(
      audit::audit_ultrametric(audit::make_oracle(base::unit_interval()), 500, ctx.opt.seed, 1),
      "interval ultrametric");
  if (!ctx.opt.inject_corruption) {
    SuiteOptions corrupted;
    corrupted.seed = ctx.opt.seed;
    corrupted.workers = 1;
    corrupted.inject_corruption = true;
    corrupted.only = {"02-metric-axioms"};
    const auto results = run_suite(corrupted);
    ctx.require(!all_passed(results), "corrupted suite run still passes");
  }
}

void criterion_determinism(Ctx& ctx) {
  const auto sp = unit_zspace();
  const auto& space = *sp;
  const auto seed = ctx.opt.seed;
  auto battery = [&](int workers) {
    std::string out;
    auto add = [&out](const AuditReport& rep) { out += report::to_json(rep).dump(2); };
    add(audit::audit_metric(audit::make_oracle(space), 1000, seed, workers));
    add(audit::audit_ultrametric(audit::make_oracle(base::cantor_finite(6)), 1000, seed, workers));
    add(audit::audit_distinct_distances(audit::make_oracle(base::cantor_finite(12)), 64, seed));
    add(audit::audit_lipschitz(audit::f_project_map(sp), audit::make_oracle(space),
                               audit::make_oracle(space.bs), 1000, seed, workers));
    add(audit::audit_chain(audit::make_oracle(space),
                           to_handles(zcon::skeleton_sample(space, 16, Rat(1, 8))), Rat(1, 8),
                           workers));
    add(audit::audit_cauchy(audit::make_oracle(space), {audit::zcon_spike_probe(sp)}, 20));
    add(audit::audit_ball_image_zcon(space, 50, seed, workers));
    add(audit::audit_ball_image_extremal(50, seed, workers));
    add(audit::audit_classify_extremal(25, seed, workers));
    return out;
  };
  const std::string first = battery(1);
  const std::string second = battery(1);
  const std::string parallel = battery(4);
  ctx.require(first == second, "repeated run with the same seed differs");
  ctx.require(first == parallel, "worker counts 1 and 4 differ");
}

struct Criterion {
  std::string id;
  std::string description;
  std::optional<double> budget_seconds;
  std::function<void(Ctx&)> run;
};

const std::vector<Criterion>& registry() {
  static const std::vector<Criterion> criteria = {
      {"01-cobweb-oracle", "cobweb closed form == shortest-path oracle, 500 seeded instances", 5.0,
       criterion_cobweb_oracle},
      {"02-metric-axioms", "metric axioms, 10000 exact triples on each of seven spaces", 60.0,
       criterion_metric_axioms},
      {"03-cantor-ultrametric",
       "strong triangle exhaustively on subsets of {1..6}; distinct-distance bound on 200 families",
       std::nullopt, criterion_cantor_ultrametric},
      {"04-fiber-identities",
       "fiber projection: Lipschitz, min fiber distance with witnesses, ball images", 30.0,
       criterion_fiber_identities},
      {"05-star-discreteness", "star points of distinct fibers at exact distance 2 (truncated 1)",
       std::nullopt, criterion_star_discreteness},
      {"06-tower",
       "height-3 tower: thread consistency, certified enclosures, distinct-distance sum bound",
       60.0, criterion_tower},
      {"07-chain-proxy", "skeleton sample chains into one component; star points stay isolated",
       std::nullopt, criterion_chain_proxy},
      {"08-extremal", "extremum classification, ball images, Lipschitz value map", 30.0,
       criterion_extremal},
      {"09-completeness", "three probe families converge with exact step bounds to depth 20",
       std::nullopt, criterion_completeness},
      {"10-negative-controls",
       "corrupted table and interval ultrametric audits detect violations; corrupted suite fails",
       std::nullopt, criterion_negative_controls},
      {"11-determinism", "audit reports byte-identical across reruns and worker counts {1,4}",
       std::nullopt, criterion_determinism},
  };
  return criteria;
}

}  // namespace

std::vector<std::string> criterion_ids() {
  std::vector<std::string> ids;
  for (const auto& c : registry()) ids.push_back(c.id);
  return ids;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
  std::set<std::string> wanted(options.only.begin(), options.only.end());
  for (const auto& id : wanted) {
    bool known = false;
    for (const auto& c : registry()) known = known || c.id == id;
    if (!known) throw parse_error("unknown criterion id '" + id + "'");
  }

  std::vector<CriterionResult> results;
  for (const auto& criterion : registry()) {
    if (!wanted.empty() && !wanted.count(criterion.id)) continue;
    CriterionResult res;
    res.id = criterion.id;
    res.description = criterion.description;
    Ctx ctx{options, 0, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(ctx);
    } catch (const std::exception& e) {
      ctx.failures.push_back(std::string("exception: ") + e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.budget_seconds && res.seconds >= *criterion.budget_seconds)
      ctx.failures.push_back("runtime " + std::to_string(res.seconds) + "s exceeds budget " +
                             std::to_string(*criterion.budget_seconds) + "s");
    res.pass = ctx.failures.empty();
    std::ostringstream detail;
    detail << ctx.checks << " checks";
    if (!ctx.failures.empty()) {
      detail << "; ";
      for (std::size_t i = 0; i < ctx.failures.size() && i < 3; ++i)
        detail << (i ? " | " : "") << ctx.failures[i];
      if (ctx.failures.size() > 3) detail << " | (+" << ctx.failures.size() - 3 << " more)";
    }
    res.detail = detail.str();
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace exm::suite
