#include "exm/audit.hpp"

#include "exm/oracles.hpp"
#include "exm/report_json.hpp"

#include <doctest.h>

using namespace exm;
using namespace exm::audit;

namespace {

base::BaseSpace broken_table() {
  return base::finite_discrete_unchecked({{Rat(0), rat("1/2"), Rat(2)},
                                          {rat("1/2"), Rat(0), rat("1/2")},
                                          {Rat(2), rat("1/2"), Rat(0)}});
}

SpaceOracle constant_oracle() {
  auto o = make_oracle(base::unit_interval());
  o.sample = [](Rng&) { return PointHandle(base::BasePoint{Rat(1, 2)}); };
  return o;
}

std::string dump(const AuditReport& rep) { return report::to_json(rep).dump(2); }

}  // namespace

TEST_CASE("metric audit passes on honest spaces") {
  CHECK(audit_metric(make_oracle(base::unit_interval()), 1000, 1).ok());
  CHECK(audit_metric(make_oracle(hedgehog::Space{8, Rat(2)}), 1000, 1).ok());
}

TEST_CASE("metric audit names the triple that breaks a corrupted table") {
  const auto rep = audit_metric(make_oracle(broken_table()), 500, 1);
  CHECK(!rep.ok());
  REQUIRE(!rep.violations.empty());
  const auto& v = rep.violations.front();
  CHECK(v.check == "triangle");
  CHECK(v.points.size() == 3);
  CHECK(v.values.size() == 2);
}

TEST_CASE("ultrametric audit separates the cantor space from the interval") {
  CHECK(audit_ultrametric(make_oracle(base::cantor_finite(6)), 1000, 1).ok());
  const auto rep = audit_ultrametric(make_oracle(base::unit_interval()), 500, 1);
  CHECK(!rep.violations.empty());
  // A singleton carrier passes vacuously.
  CHECK(audit_ultrametric(constant_oracle(), 100, 1).ok());
}

TEST_CASE("exhaustive ultrametric audit covers every triple") {
  const auto carrier = cantor_carrier(4);
  const auto rep = audit_ultrametric_exhaustive(make_oracle(base::cantor_finite(4)), carrier, 2);
  CHECK(rep.ok());
  CHECK(rep.attempted == 16 * 16 * 16);
}

TEST_CASE("distinct-distance audit asserts the ultrametric bound") {
  const auto rep = audit_distinct_distances(make_oracle(base::cantor_finite(12)), 64, 7);
  CHECK(rep.ok());

  // Two points realize exactly two values (zero and the gap).
  const auto two = audit_distinct_distances(make_oracle(base::cantor_finite(3)), 2, 1);
  CHECK(two.ok());

  // Report-only mode on non-ultrametric oracles: counts appear, nothing is
  // asserted.
  const auto interval = audit_distinct_distances(make_oracle(base::unit_interval()), 16, 7);
  CHECK(interval.ok());
  bool saw_flag = false;
  for (const auto& [k, v] : interval.stats)
    if (k == "asserted") {
      saw_flag = true;
      CHECK(v == "false");
    }
  CHECK(saw_flag);
}

TEST_CASE("lipschitz audit accepts the fiber projection and the identity") {
  auto sp = std::make_shared<const zcon::ZSpace>(zcon::make_zspace(base::unit_interval(), Rat(2)));
  CHECK(audit_lipschitz(f_project_map(sp), make_oracle(*sp), make_oracle(sp->bs), 1000, 3).ok());
  CHECK(audit_lipschitz(e_value_map(), make_extremal_oracle(),
                        make_oracle(base::unit_interval()), 1000, 3)
            .ok());
  const auto o = make_oracle(base::cantor_finite(6));
  CHECK(audit_lipschitz(identity_map(), o, o, 500, 3).ok());
}

TEST_CASE("chain audit counts components") {
  const auto space = zcon::make_zspace(base::unit_interval(), Rat(2));
  const auto oracle = make_oracle(space);
  auto handles = [](const std::vector<zcon::ZPoint>& pts) {
    std::vector<PointHandle> out;
    for (const auto& p : pts) out.emplace_back(p);
    return out;
  };
  const auto skel = audit_chain(oracle, handles(zcon::skeleton_sample(space, 16, rat("1/8"))),
                                rat("1/8"), 2);
  REQUIRE(!skel.stats.empty());
  CHECK(skel.stats.back().first == "components");
  CHECK(skel.stats.back().second == "1");

  const auto stars = zcon::star_grid_sample(space, 16);
  const auto isolated = audit_chain(oracle, handles(stars), rat("1/8"), 2);
  CHECK(isolated.stats.back().second == std::to_string(stars.size()));

  const auto singleton = audit_chain(oracle, handles({zcon::star_point(space, rat("1/2"))}),
                                     rat("1/8"), 1);
  CHECK(singleton.stats.back().second == "1");
  CHECK_THROWS_AS(audit_chain(oracle, {}, rat("1/8"), 1), validation_error);
}

TEST_CASE("cauchy probes meet the exact step bounds") {
  const hedgehog::Space hh{8, Rat(2)};
  CHECK(audit_cauchy(make_oracle(hh), {hedgehog_spike_probe(hh)}, 20).ok());
  const cobweb::Space cw{{0, 1, 2}, Rat(2)};
  CHECK(audit_cauchy(make_oracle(cw), {cobweb_thread_probe(cw)}, 20).ok());
  auto sp = std::make_shared<const zcon::ZSpace>(zcon::make_zspace(base::unit_interval(), Rat(2)));
  CHECK(audit_cauchy(make_oracle(*sp), {zcon_spike_probe(sp)}, 20).ok());

  // A constant sequence converges at step zero.
  const CauchyProbe constant{
      "constant", [](unsigned) { return PointHandle(hedgehog::Point{1, Rat(1)}); },
      PointHandle(hedgehog::Point{1, Rat(1)})};
  CHECK(audit_cauchy(make_oracle(hh), {constant}, 20).ok());
}

TEST_CASE("ball-image and classification audits pass") {
  const auto space = zcon::make_zspace(base::unit_interval(), Rat(2));
  CHECK(audit_ball_image_zcon(space, 50, 5, 2).ok());
  CHECK(audit_ball_image_extremal(50, 5, 2).ok());
  CHECK(audit_classify_extremal(25, 5, 2).ok());
}

TEST_CASE("reports are identical across reruns and worker counts") {
  const auto space = zcon::make_zspace(base::unit_interval(), Rat(2));
  const auto oracle = make_oracle(space);
  const auto once = dump(audit_metric(oracle, 500, 11, 1));
  CHECK(once == dump(audit_metric(oracle, 500, 11, 1)));
  CHECK(once == dump(audit_metric(oracle, 500, 11, 4)));
  CHECK(once != dump(audit_metric(oracle, 500, 12, 1)));  // the seed matters
}

TEST_CASE("parallel fold preserves check order") {
  AuditReport rep;
  apply_checks(rep, 100, 4, [](std::size_t i) {
    if (i % 2 == 0) return std::vector<Violation>{Violation{"even", {}, {}, std::to_string(i)}};
    return std::vector<Violation>{};
  });
  REQUIRE(rep.violations.size() == 50);
  for (std::size_t i = 0; i < rep.violations.size(); ++i)
    CHECK(rep.violations[i].detail == std::to_string(2 * i));
  CHECK(rep.attempted == 100);
  CHECK(rep.passed == 50);

  // Several violations from one check still count one failed check.
  AuditReport multi;
  apply_checks(multi, 10, 2, [](std::size_t i) {
    if (i == 3)
      return std::vector<Violation>{Violation{"a", {}, {}, ""}, Violation{"b", {}, {}, ""}};
    return std::vector<Violation>{};
  });
  CHECK(multi.attempted == 10);
  CHECK(multi.passed == 9);
  CHECK(multi.violations.size() == 2);
}

TEST_CASE("violation records carry replayable data") {
  const auto rep = audit_ultrametric(make_oracle(base::unit_interval()), 500, 1);
  REQUIRE(!rep.violations.empty());
  const auto& v = rep.violations.front();
  REQUIRE(v.points.size() == 3);
  // Replaying the recorded triple reproduces the failure.
  const auto space = base::unit_interval();
  const auto x = base::parse_point(space, v.points[0]);
  const auto y = base::parse_point(space, v.points[1]);
  const auto z = base::parse_point(space, v.points[2]);
  CHECK(base::base_distance(space, x, z) >
        rat_max(base::base_distance(space, x, y), base::base_distance(space, y, z)));
}
