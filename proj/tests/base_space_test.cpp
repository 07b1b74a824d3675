#include "exm/base_space.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

using namespace exm;
using namespace exm::base;

namespace {

// Independent route to the cantor formula: explicit symmetric difference.
Rat cantor_brute(const CantorSet& a, const CantorSet& b) {
  std::set<std::uint32_t> sym;
  for (auto e : a) sym.insert(e);
  for (auto e : b) {
    if (sym.count(e))
      sym.erase(e);
    else
      sym.insert(e);
  }
  if (sym.empty()) return Rat(0);
  return Rat(1, *sym.begin());
}

BaseSpace small_table_space() {
  return finite_discrete({{Rat(0), Rat(1, 2)}, {Rat(1, 2), Rat(0)}});
}

}  // namespace

TEST_CASE("unit interval distance") {
  const auto space = unit_interval();
  CHECK(base_distance(space, BasePoint{rat("1/3")}, BasePoint{rat("1/3")}) == 0);
  CHECK(base_distance(space, BasePoint{rat("0")}, BasePoint{rat("3/4")}) == rat("3/4"));
  CHECK_THROWS_AS(base_distance(space, BasePoint{rat("3/2")}, BasePoint{rat("0")}),
                  validation_error);
  CHECK_THROWS_AS(base_distance(space, BasePoint{CantorSet{}}, BasePoint{rat("0")}),
                  validation_error);
}

TEST_CASE("discrete table lookup") {
  const auto space = small_table_space();
  CHECK(base_distance(space, BasePoint{std::uint32_t{0}}, BasePoint{std::uint32_t{1}}) ==
        rat("1/2"));
  CHECK_THROWS_AS(base_distance(space, BasePoint{std::uint32_t{2}}, BasePoint{std::uint32_t{0}}),
                  validation_error);
}

TEST_CASE("cantor distance matches the symmetric-difference formula") {
  CHECK(cantor_distance({1}, {2}) == 1);
  CHECK(cantor_distance({1, 2, 5}, {1, 2, 5}) == 0);
  CHECK(cantor_distance({1, 2}, {1, 3}) == rat("1/2"));
  CHECK(cantor_distance({}, {4}) == rat("1/4"));
  CHECK(cantor_distance({}, {}) == 0);

  // Against the explicit brute-force route on every pair over {1..5}.
  std::vector<CantorSet> all;
  for (unsigned mask = 0; mask < 32; ++mask) {
    CantorSet s;
    for (unsigned e = 0; e < 5; ++e)
      if (mask & (1u << e)) s.push_back(e + 1);
    all.push_back(s);
  }
  for (const auto& a : all)
    for (const auto& b : all) CHECK(cantor_distance(a, b) == cantor_brute(a, b));
}

TEST_CASE("cantor strong triangle inequality, exhaustive on {1..4}") {
  std::vector<CantorSet> all;
  for (unsigned mask = 0; mask < 16; ++mask) {
    CantorSet s;
    for (unsigned e = 0; e < 4; ++e)
      if (mask & (1u << e)) s.push_back(e + 1);
    all.push_back(s);
  }
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all)
        CHECK(cantor_distance(a, c) <= rat_max(cantor_distance(a, b), cantor_distance(b, c)));
}

TEST_CASE("gauge truncates the metric at one") {
  const auto interval = unit_interval();
  CHECK(gauge(interval, BasePoint{rat("0")}, BasePoint{rat("3/4")}) == rat("3/4"));
  CHECK(gauge(interval, BasePoint{rat("2/3")}, BasePoint{rat("2/3")}) == 0);

  const auto big = finite_discrete({{Rat(0), rat("5/2")}, {rat("5/2"), Rat(0)}});
  CHECK(gauge(big, BasePoint{std::uint32_t{0}}, BasePoint{std::uint32_t{1}}) == 1);
}

TEST_CASE("truncate clamps discrete tables and leaves bounded spaces alone") {
  const auto big = finite_discrete({{Rat(0), Rat(3)}, {Rat(3), Rat(0)}});
  const auto cut = truncate(big);
  CHECK(cut.table[0][1] == 1);
  CHECK(cut.table[0][0] == 0);
  const auto interval = truncate(unit_interval());
  CHECK(interval.kind == Kind::UnitIntervalQ);
  const auto cf = truncate(cantor_finite(6));
  CHECK(cf.max_element == 6);
}

TEST_CASE("table validation names the broken axiom") {
  CHECK_THROWS_WITH_AS(validate_table({{Rat(1)}}), doctest::Contains("diagonal"),
                       validation_error);
  CHECK_THROWS_WITH_AS(validate_table({{Rat(0), Rat(1)}, {Rat(2), Rat(0)}}),
                       doctest::Contains("asymmetric"), validation_error);
  CHECK_THROWS_WITH_AS(validate_table({{Rat(0), Rat(-1)}, {Rat(-1), Rat(0)}}),
                       doctest::Contains("negative"), validation_error);
  CHECK_THROWS_WITH_AS(validate_table({{Rat(0), Rat(0)}, {Rat(0), Rat(0)}}),
                       doctest::Contains("off-diagonal"), validation_error);
  CHECK_THROWS_WITH_AS(
      validate_table({{Rat(0), Rat(1), Rat(3)}, {Rat(1), Rat(0), Rat(1)}, {Rat(3), Rat(1), Rat(0)}}),
      doctest::Contains("triangle"), validation_error);
  CHECK_NOTHROW(validate_table(
      {{Rat(0), Rat(1), Rat(2)}, {Rat(1), Rat(0), Rat(1)}, {Rat(2), Rat(1), Rat(0)}}));
}

TEST_CASE("metric axioms hold exactly on sampled triples") {
  for (const auto& space :
       {unit_interval(), cantor_finite(6),
        finite_discrete({{Rat(0), Rat(1), rat("1/2")},
                         {Rat(1), Rat(0), rat("3/4")},
                         {rat("1/2"), rat("3/4"), Rat(0)}})}) {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
      const auto x = sample_point(space, rng);
      const auto y = sample_point(space, rng);
      const auto z = sample_point(space, rng);
      const Rat dxy = base_distance(space, x, y);
      CHECK(dxy == base_distance(space, y, x));
      CHECK((dxy == 0) == (x == y));
      CHECK(base_distance(space, x, z) <= dxy + base_distance(space, y, z));
      CHECK(gauge(space, x, y) <= 1);
      if (dxy <= 1) CHECK(gauge(space, x, y) == dxy);
    }
  }
}

TEST_CASE("interval sampling stays on the bounded-denominator grid") {
  const auto space = unit_interval(16);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto p = std::get<Rat>(sample_point(space, rng));
    CHECK(p >= 0);
    CHECK(p <= 1);
    CHECK(denominator(p) <= (BigInt(1) << 16));
  }
  Rng a(11), b(11);
  for (int i = 0; i < 50; ++i) CHECK(sample_point(space, a) == sample_point(space, b));
}

TEST_CASE("point literals round trip") {
  const auto interval = unit_interval();
  CHECK(parse_point(interval, "3/4") == BasePoint{rat("3/4")});
  CHECK(format_point(BasePoint{rat("3/4")}) == "3/4");

  const auto cf = cantor_finite(6);
  CHECK(parse_point(cf, "{1,3,2}") == BasePoint{CantorSet{1, 2, 3}});
  CHECK(parse_point(cf, "{}") == BasePoint{CantorSet{}});
  CHECK(format_point(BasePoint{CantorSet{1, 2, 3}}) == "{1,2,3}");
  CHECK_THROWS_AS(parse_point(cf, "1,2"), parse_error);
  CHECK_THROWS_AS(parse_point(cf, "{a}"), parse_error);

  const auto table = small_table_space();
  CHECK(parse_point(table, "1") == BasePoint{std::uint32_t{1}});
  CHECK_THROWS_AS(parse_point(table, "x"), parse_error);
}

TEST_CASE("cantor sets hold positive integers in canonical order") {
  CHECK(make_cantor_set({3, 1, 2, 2}) == CantorSet{1, 2, 3});
  CHECK_THROWS_AS(make_cantor_set({0}), validation_error);
  const auto cf = cantor_finite(6);
  CHECK_THROWS_AS(require_point(cf, BasePoint{CantorSet{2, 1}}), validation_error);
}
