#include "exm/zcon.hpp"

#include <doctest.h>

#include <optional>

using namespace exm;
using namespace exm::zcon;

namespace {

ZSpace unit_space() { return make_zspace(base::unit_interval(), Rat(2)); }

base::BasePoint bp(const char* lit) { return base::BasePoint{rat(lit)}; }

}  // namespace

TEST_CASE("construction canonicalizes and validates") {
  const auto space = unit_space();
  const auto star = z_make(space, bp("1/3"), std::nullopt, Rat(2));
  CHECK(!star.toward);
  CHECK(star.t == 2);

  // t = 0 is the fiber vortex, stored in star-spike form.
  const auto bar = z_make(space, bp("1/3"), bp("2/3"), Rat(0));
  CHECK(!bar.toward);
  CHECK(bar.t == 0);
  CHECK(bar == bar_point(space, bp("1/3")));

  // The toward spike stops gauge(b, a) short of eps.
  const auto tip = tip_toward(space, bp("0"), bp("1/2"));
  CHECK(tip.t == rat("3/2"));
  CHECK_THROWS_AS(z_make(space, bp("0"), bp("1/2"), rat("8/5")), validation_error);
  CHECK_THROWS_AS(z_make(space, bp("1/3"), bp("1/3"), Rat(1)), validation_error);
  CHECK_THROWS_AS(z_make(space, bp("1/3"), std::nullopt, rat("5/2")), validation_error);
  CHECK_THROWS_AS(make_zspace(base::unit_interval(), Rat(1)), validation_error);
}

TEST_CASE("embedding targets the right threads") {
  const auto space = unit_space();
  const auto star = z_embed(space, star_point(space, bp("1/4")));
  CHECK(star.is_vortex());
  CHECK(star.u.tag == VTag::Star);
  CHECK(star.u.at == bp("1/4"));

  const auto bar = z_embed(space, bar_point(space, bp("1/4")));
  CHECK(bar.is_vortex());
  CHECK(bar.u.tag == VTag::Bar);

  const auto mid = z_embed(space, z_make(space, bp("1/4"), bp("3/4"), Rat(1)));
  CHECK(!mid.is_vortex());
  CHECK(mid.u == ZVortex{VTag::Bar, bp("1/4")});
  CHECK(mid.v == ZVortex{VTag::Star, bp("3/4")});
  CHECK(mid.t == 1);
}

TEST_CASE("star-to-tip distance is the gauge") {
  const auto space = unit_space();
  // The tip of fiber b's spike toward a sits gauge(a,b) from star(a).
  const auto star_a = star_point(space, bp("0"));
  const auto tip_b = tip_toward(space, bp("1/2"), bp("0"));
  CHECK(z_distance(space, star_a, tip_b) == rat("1/2"));

  CHECK(z_distance(space, bar_point(space, bp("0")), bar_point(space, bp("1"))) == 2);
  CHECK(z_distance_truncated(space, bar_point(space, bp("0")), bar_point(space, bp("1"))) == 1);
  CHECK(z_distance(space, star_a, star_a) == 0);
}

TEST_CASE("projection is fiber-constant") {
  const auto space = unit_space();
  CHECK(f_project(star_point(space, bp("2/3"))) == bp("2/3"));
  CHECK(f_project(bar_point(space, bp("2/3"))) == bp("2/3"));
  // The tip toward b still belongs to fiber a.
  CHECK(f_project(tip_toward(space, bp("2/3"), bp("1/3"))) == bp("2/3"));
}

TEST_CASE("fiber min distance with exact witness") {
  const auto space = unit_space();
  const auto fm = fiber_min_distance(space, bp("0"), bp("1/3"));
  CHECK(fm.value == rat("1/3"));
  CHECK(z_distance(space, fm.witness_in_a, fm.witness_in_b) == rat("1/3"));
  CHECK(fiber_min_distance(space, bp("1/3"), bp("0")).value == rat("1/3"));
  CHECK_THROWS_AS(fiber_min_distance(space, bp("0"), bp("0")), validation_error);

  // Sampled cross-fiber pairs never undercut the minimum.
  const auto xs = sample_fiber(space, bp("0"), 100, 5);
  const auto us = sample_fiber(space, bp("1/3"), 100, 6);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(z_distance(space, xs[i], us[i]) >= rat("1/3"));
}

TEST_CASE("ball image membership") {
  const auto space = unit_space();
  const auto hit = ball_image_contains(space, bp("1/2"), rat("1/4"), bp("3/5"));
  CHECK(hit.contains);
  CHECK(hit.separation == rat("1/10"));
  REQUIRE(hit.witness.has_value());
  CHECK(f_project(*hit.witness) == bp("3/5"));
  CHECK(z_distance(space, star_point(space, bp("1/2")), *hit.witness) == rat("1/10"));

  CHECK(ball_image_contains(space, bp("1/2"), rat("1/100"), bp("1/2")).contains);

  const auto miss = ball_image_contains(space, bp("0"), rat("1/4"), bp("1/2"));
  CHECK(!miss.contains);
  CHECK(miss.separation == rat("1/2"));
  const auto star_a = star_point(space, bp("0"));
  for (const auto& x : sample_fiber(space, bp("1/2"), 100, 7))
    CHECK(z_distance(space, star_a, x) >= rat("1/4"));

  CHECK_THROWS_AS(ball_image_contains(space, bp("0"), Rat(0), bp("1/2")), validation_error);
}

TEST_CASE("star points of distinct fibers are eps apart") {
  const auto space = unit_space();
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto a = base::sample_point(space.bs, rng);
    auto b = base::sample_point(space.bs, rng);
    if (a == b) continue;
    CHECK(z_distance(space, star_point(space, a), star_point(space, b)) == 2);
    CHECK(z_distance_truncated(space, star_point(space, a), star_point(space, b)) == 1);
  }
}

TEST_CASE("projection is 1-Lipschitz into the gauge") {
  const auto space = unit_space();
  Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const auto p = sample_zpoint(space, rng);
    const auto q = sample_zpoint(space, rng);
    CHECK(base::gauge(space.bs, f_project(p), f_project(q)) <= z_distance(space, p, q));
  }
}

TEST_CASE("spike interiors away from tips keep other fibers at bay") {
  const auto space = unit_space();
  const Rat delta = rat("1/8");
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    const auto a = base::sample_point(space.bs, rng);
    const auto b = base::sample_point(space.bs, rng);
    if (a == b) continue;
    // A star-spike interior point with a delta margin on both sides.
    const Rat t = delta + rng.rational_in(space.eps - 2 * delta);
    const auto p = z_make(space, a, std::nullopt, t);
    const Rat floor = rat_min(delta, fiber_min_distance(space, a, b).value);
    for (const auto& q : sample_fiber(space, b, 20, rng.next()))
      CHECK(z_distance(space, p, q) >= floor);
  }
}

TEST_CASE("fiber sampling is deterministic and stays in the fiber") {
  const auto space = unit_space();
  const auto first = sample_fiber(space, bp("1/3"), 50, 42);
  const auto second = sample_fiber(space, bp("1/3"), 50, 42);
  CHECK(first == second);
  for (const auto& p : first) CHECK(f_project(p) == bp("1/3"));
}

TEST_CASE("metric axioms for z_distance and its truncation") {
  const auto space = unit_space();
  Rng rng(29);
  for (int i = 0; i < 500; ++i) {
    const auto x = sample_zpoint(space, rng);
    const auto y = sample_zpoint(space, rng);
    const auto z = sample_zpoint(space, rng);
    const Rat dxy = z_distance(space, x, y);
    CHECK(dxy == z_distance(space, y, x));
    CHECK((dxy == 0) == (x == y));
    CHECK(z_distance(space, x, z) <= dxy + z_distance(space, y, z));
    const Rat txy = z_distance_truncated(space, x, y);
    CHECK(txy == rat_min(dxy, Rat(1)));
    CHECK(z_distance_truncated(space, x, z) <=
          txy + z_distance_truncated(space, y, z));
  }
}

TEST_CASE("skeleton samples require an interval base") {
  const auto cantor_z = make_zspace(base::cantor_finite(4), Rat(2));
  CHECK_THROWS_AS(skeleton_sample(cantor_z, 8, rat("1/8")), validation_error);
  const auto space = unit_space();
  const auto stars = star_grid_sample(space, 8);
  CHECK(stars.size() == 9);
  const auto skel = skeleton_sample(space, 8, rat("1/8"));
  CHECK(skel.size() > 9);
}

TEST_CASE("zcon point literals round trip") {
  const auto space = unit_space();
  const auto p = parse_zpoint(space, "toward:1/2:0/1:3/2");
  CHECK(p == tip_toward(space, bp("1/2"), bp("0")));
  CHECK(format_zpoint(p) == "toward:1/2:0/1:3/2");
  CHECK(parse_zpoint(space, "star:1/4:0/1") == bar_point(space, bp("1/4")));
  CHECK_THROWS_AS(parse_zpoint(space, "spiral:1/2:1"), parse_error);
  CHECK_THROWS_AS(parse_zpoint(space, "star:1/2"), parse_error);
}
