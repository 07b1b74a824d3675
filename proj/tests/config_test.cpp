#include "exm/space_config.hpp"

#include <doctest.h>

using namespace exm;
using namespace exm::cfg;

TEST_CASE("defaults per kind") {
  CHECK(default_spec("hedgehog").eps == 2);
  CHECK(default_spec("hedgehog").spikes == 8);
  CHECK(default_spec("tower").height == 3);
  CHECK(default_spec("tower").base->kind == "unit_interval");
  CHECK(default_spec("extremal").eps == 1);
  CHECK(default_spec("cobweb").vortices.size() == 6);
  CHECK(default_spec("unit_interval").grid_log2 == 16);
  CHECK_THROWS_AS(default_spec("torus"), parse_error);
}

TEST_CASE("parsing a nested tower config") {
  const auto spec = parse_config_text(
      "# tower over a truncated table\n"
      "kind = tower\n"
      "height = 2\n"
      "eps = 3/2\n"
      "base.kind = discrete\n"
      "base.table.0 = 0/1, 1/2\n"
      "base.table.1 = 1/2, 0/1\n");
  CHECK(spec.kind == "tower");
  CHECK(spec.height == 2);
  CHECK(spec.eps == rat("3/2"));
  REQUIRE(spec.base);
  CHECK(spec.base->kind == "discrete");
  CHECK(spec.base->table[0][1] == rat("1/2"));
  CHECK_NOTHROW(build_tower(spec));
}

TEST_CASE("unknown and malformed keys are rejected") {
  CHECK_THROWS_AS(parse_config_text("kind = hedgehog\ncolor = red\n"), parse_error);
  CHECK_THROWS_AS(parse_config_text("spikes = 4\n"), parse_error);  // no kind
  CHECK_THROWS_AS(parse_config_text("kind = hedgehog\nkind = cobweb\n"), parse_error);
  CHECK_THROWS_AS(parse_config_text("kind = hedgehog\nspikes\n"), parse_error);
  CHECK_THROWS_AS(parse_config_text("kind = hedgehog\neps = fast\n"), parse_error);
  // eps is pinned at one for the extremal space.
  CHECK_THROWS_AS(parse_config_text("kind = extremal\neps = 2/1\n"), parse_error);
  // Base keys belong to nested kinds only.
  CHECK_THROWS_AS(parse_config_text("kind = hedgehog\nbase.kind = cantor\n"), parse_error);
  CHECK_THROWS_AS(parse_config_text("kind = zcon\n"), parse_error);  // missing base.*
  CHECK_THROWS_AS(parse_config_text("kind = zcon\nbase.kind = zcon\n"), parse_error);
}

TEST_CASE("cobweb vortex lists") {
  const auto listed = parse_config_text("kind = cobweb\nvortices = 3, 1, 7\n");
  CHECK(listed.vortices == std::vector<std::uint32_t>{3, 1, 7});
  const auto counted = parse_config_text("kind = cobweb\nvortex_count = 4\n");
  CHECK(counted.vortices == std::vector<std::uint32_t>{0, 1, 2, 3});
  CHECK_THROWS_AS(parse_config_text("kind = cobweb\nvortices = 1,1\n"), validation_error);
  CHECK_THROWS_AS(parse_config_text("kind = cobweb\nvortices = 1\nvortex_count = 2\n"),
                  parse_error);
}

TEST_CASE("discrete tables validate on build") {
  const auto spec = parse_config_text(
      "kind = discrete\n"
      "table.0 = 0/1, 3/1\n"
      "table.1 = 3/1, 0/1\n");
  CHECK_NOTHROW(build_base(spec));
  const auto bad = parse_config_text(
      "kind = discrete\n"
      "table.0 = 0/1, 1/1\n"
      "table.1 = 2/1, 0/1\n");
  CHECK_THROWS_AS(build_base(bad), validation_error);
}

TEST_CASE("tower height bounds") {
  CHECK_THROWS_AS(parse_config_text("kind = tower\nheight = 0\nbase.kind = unit_interval\n"),
                  validation_error);
  CHECK_THROWS_AS(parse_config_text("kind = tower\nheight = 20\nbase.kind = unit_interval\n"),
                  validation_error);
}

TEST_CASE("resolved maps parse back to the same spec") {
  for (const char* text :
       {"kind = unit_interval\ngrid_log2 = 12\n",
        "kind = cantor\nmax_element = 9\n",
        "kind = discrete\ntable.0 = 0/1, 1/1\ntable.1 = 1/1, 0/1\n",
        "kind = hedgehog\nspikes = 3\neps = 1/1\n",
        "kind = cobweb\nvortices = 0, 2, 4\neps = 3/2\n",
        "kind = zcon\neps = 2/1\nbase.kind = unit_interval\n",
        "kind = tower\nheight = 2\nbase.kind = cantor\nbase.max_element = 4\n",
        "kind = extremal\n"}) {
    const auto spec = parse_config_text(text);
    const auto round = spec_from_map(spec.resolved());
    CHECK(round.resolved() == spec.resolved());
  }
}
