#pragma once

#include "exm/audit.hpp"
#include "exm/base_space.hpp"
#include "exm/cobweb.hpp"
#include "exm/extremal.hpp"
#include "exm/hedgehog.hpp"
#include "exm/invlimit.hpp"
#include "exm/zcon.hpp"

#include <memory>
#include <vector>

namespace exm::audit {

SpaceOracle make_oracle(const base::BaseSpace& space);
SpaceOracle make_oracle(const hedgehog::Space& space);
SpaceOracle make_oracle(const cobweb::Space& space);
SpaceOracle make_oracle(const zcon::ZSpace& space);
// Samples representable limit threads; distance is the exact product metric.
SpaceOracle make_oracle(const invlim::Tower& tower);
SpaceOracle make_extremal_oracle(unsigned grid_log2 = 10);

// Every finite subset of {1, ..., max_element}, as oracle point handles.
std::vector<PointHandle> cantor_carrier(std::uint32_t max_element);

// The fiber projection of the construction, zcon -> base.
LipschitzMap f_project_map(std::shared_ptr<const zcon::ZSpace> space);
// The value map of the extremal space, into the unit interval.
LipschitzMap e_value_map();
LipschitzMap identity_map();

// Completeness probe families: geometric approach along a spike or thread
// tail toward a representable limit.
CauchyProbe hedgehog_spike_probe(const hedgehog::Space& space);
CauchyProbe cobweb_thread_probe(const cobweb::Space& space);
CauchyProbe zcon_spike_probe(std::shared_ptr<const zcon::ZSpace> space);

// Both inclusion directions of the ball-image identity around star points:
// membership witnesses land strictly inside the ball and project correctly;
// non-members keep every sampled fiber point at least r away.
AuditReport audit_ball_image_zcon(const zcon::ZSpace& space, std::uint64_t n_trials,
                                  std::uint64_t seed, int workers = 1);

// Same for the extremal space around up/down vortices, against the half-open
// interval images of the value map.
AuditReport audit_ball_image_extremal(std::uint64_t n_trials, std::uint64_t seed,
                                      int workers = 1);

// Classification semantics: up endpoints are local minima, down endpoints
// local maxima, everything else locally constant, each verified by exact
// in-ball samples of the value map.
AuditReport audit_classify_extremal(std::uint64_t n_points, std::uint64_t seed, int workers = 1);

}  // namespace exm::audit
