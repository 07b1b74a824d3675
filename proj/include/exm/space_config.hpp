#pragma once

#include "exm/base_space.hpp"
#include "exm/cobweb.hpp"
#include "exm/error.hpp"
#include "exm/hedgehog.hpp"
#include "exm/invlimit.hpp"
#include "exm/zcon.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace exm::cfg {

// A validated space description, loadable from a flat key-value config file:
//
//   kind = zcon          # unit_interval | cantor | discrete | hedgehog |
//                        # cobweb | zcon | tower | extremal
//   eps = 2/1
//   base.kind = unit_interval
//
// Lines starting with '#' are comments. Unknown keys are rejected. Discrete
// tables arrive as CSV rows of rationals: table.0 = 0/1,1/2 ...
struct SpaceSpec {
  std::string kind;
  unsigned grid_log2 = 16;            // unit_interval, extremal
  std::uint32_t max_element = 6;      // cantor
  std::vector<std::vector<Rat>> table;  // discrete
  std::uint32_t spikes = 8;           // hedgehog
  Rat eps{2};                         // hedgehog, cobweb, zcon, tower
  std::vector<std::uint32_t> vortices;  // cobweb
  int height = 3;                     // tower
  std::shared_ptr<SpaceSpec> base;    // zcon, tower

  // Flat map that parses back to an identical spec; embedded in reports.
  std::map<std::string, std::string> resolved() const;
};

// Spec with documented defaults for the kind (seedless parameters only).
SpaceSpec default_spec(const std::string& kind);

SpaceSpec parse_config_text(const std::string& text);
SpaceSpec load_config_file(const std::string& path);
SpaceSpec spec_from_map(const std::map<std::string, std::string>& kv);

bool is_base_kind(const std::string& kind);

base::BaseSpace build_base(const SpaceSpec& spec);
hedgehog::Space build_hedgehog(const SpaceSpec& spec);
cobweb::Space build_cobweb(const SpaceSpec& spec);
zcon::ZSpace build_zcon(const SpaceSpec& spec);
invlim::Tower build_tower(const SpaceSpec& spec);

}  // namespace exm::cfg
