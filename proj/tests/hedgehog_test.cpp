#include "exm/hedgehog.hpp"

#include <doctest.h>

using namespace exm;
using namespace exm::hedgehog;

TEST_CASE("two-case metric") {
  const Space space{8, Rat(2)};
  // Same spike: |t - s|.
  CHECK(distance(space, {3, rat("1/2")}, {3, rat("3/2")}) == 1);
  // Different spikes: t + s.
  CHECK(distance(space, {1, rat("1/2")}, {2, rat("7/10")}) == rat("6/5"));
  // Center to anything: t, whichever branch fires.
  CHECK(distance(space, {0, Rat(0)}, {5, rat("7/10")}) == rat("7/10"));
  CHECK(distance(space, {4, Rat(0)}, {5, rat("7/10")}) == rat("7/10"));
}

TEST_CASE("canonical center") {
  CHECK(canonicalize({7, Rat(0)}) == Point{0, Rat(0)});
  CHECK(canonicalize({3, rat("1/2")}) == Point{3, rat("1/2")});
  CHECK(canonicalize(canonicalize({7, Rat(0)})) == canonicalize({7, Rat(0)}));
}

TEST_CASE("construction validates the carrier") {
  const Space space{4, Rat(2)};
  CHECK(make_point(space, 2, Rat(0)) == Point{0, Rat(0)});
  CHECK_THROWS_AS(make_point(space, 2, rat("5/2")), validation_error);
  CHECK_THROWS_AS(make_point(space, 2, rat("-1/2")), validation_error);
  CHECK_THROWS_AS(make_point(space, 9, Rat(1)), validation_error);
}

TEST_CASE("metric axioms and diameter bound on sampled triples") {
  const Space space{16, Rat(2)};
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto x = sample(space, rng);
    const auto y = sample(space, rng);
    const auto z = sample(space, rng);
    const Rat dxy = distance(space, x, y);
    CHECK(dxy == distance(space, y, x));
    CHECK((dxy == 0) == (x == y));
    CHECK(distance(space, x, z) <= dxy + distance(space, y, z));
    CHECK(dxy <= 2 * space.eps);
  }
}

TEST_CASE("spike approach is monotone") {
  const Space space{4, Rat(2)};
  const Point limit{2, rat("3/2")};
  Rat prev(-1);
  for (unsigned k = 0; k <= 20; ++k) {
    const Point term{2, rat("3/2") - pow2_inv(k)};
    const Rat d = distance(space, term, limit);
    CHECK(d == pow2_inv(k));
    if (k > 0) CHECK(d < prev);
    prev = d;
  }
}
