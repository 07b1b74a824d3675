#pragma once

#include "exm/rat.hpp"
#include "exm/rng.hpp"

#include <any>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace exm::audit {

// Type-erased point of whichever space an oracle wraps.
using PointHandle = std::any;

// Everything an audit needs from a space: a seeded sampler, the exact
// distance, and formatting for violation records.
struct SpaceOracle {
  std::string descriptor;
  bool ultrametric_expected = false;
  std::function<PointHandle(Rng&)> sample;
  std::function<Rat(const PointHandle&, const PointHandle&)> distance;
  std::function<std::string(const PointHandle&)> format;
};

// One failed check, with enough exact data to replay it in isolation.
struct Violation {
  std::string check;
  std::vector<std::string> points;
  std::vector<std::string> values;
  std::string detail;
};

struct AuditReport {
  std::string audit;
  std::string space;
  std::uint64_t seed = 0;
  std::map<std::string, std::uint64_t> sample_sizes;
  std::uint64_t attempted = 0;
  std::uint64_t passed = 0;
  std::vector<Violation> violations;
  // Summary statistics in insertion order (stable serialization).
  std::vector<std::pair<std::string, std::string>> stats;

  bool ok() const { return violations.empty() && passed == attempted; }
  void add_stat(std::string key, std::string value) {
    stats.emplace_back(std::move(key), std::move(value));
  }
};

// Runs checks[0..n) concurrently on `workers` threads and returns per-index
// results in index order, so reports are identical for every worker count.
std::vector<std::vector<Violation>> run_checks(
    std::size_t n, int workers,
    const std::function<std::vector<Violation>(std::size_t)>& check);

// Folds per-index results into a report: one failed check per non-clean
// index, however many violation records it produced.
void apply_checks(AuditReport& rep, std::size_t n, int workers,
                  const std::function<std::vector<Violation>(std::size_t)>& check);

// Metric axioms (identity of indiscernibles, symmetry, triangle inequality)
// on seeded triples, compared exactly.
AuditReport audit_metric(const SpaceOracle& oracle, std::uint64_t n_triples, std::uint64_t seed,
                         int workers = 1);

// Strong triangle inequality d(x,z) <= max(d(x,y), d(y,z)) on seeded triples.
AuditReport audit_ultrametric(const SpaceOracle& oracle, std::uint64_t n_triples,
                              std::uint64_t seed, int workers = 1);

// Strong triangle inequality on every ordered triple of an explicit carrier.
AuditReport audit_ultrametric_exhaustive(const SpaceOracle& oracle,
                                         const std::vector<PointHandle>& carrier,
                                         int workers = 1);

// Counts distinct pairwise distances of a seeded sample; asserts the
// ultrametric bound (at most n distinct values including zero) when the
// oracle declares itself ultrametric, reports otherwise.
AuditReport audit_distinct_distances(const SpaceOracle& oracle, std::uint64_t n_points,
                                     std::uint64_t seed);

struct LipschitzMap {
  std::string name;
  std::function<PointHandle(const PointHandle&)> apply;
};

// d_codomain(f(x), f(y)) <= d_domain(x, y) on seeded pairs, exactly.
AuditReport audit_lipschitz(const LipschitzMap& map, const SpaceOracle& domain,
                            const SpaceOracle& codomain, std::uint64_t n_pairs,
                            std::uint64_t seed, int workers = 1);

// Connected components of the relation distance <= eps_chain over an explicit
// sample; the finite proxy for connectedness evidence.
AuditReport audit_chain(const SpaceOracle& oracle, const std::vector<PointHandle>& sample,
                        const Rat& eps_chain, int workers = 1);

// A sequence with a declared limit candidate; terms are generated on demand.
struct CauchyProbe {
  std::string name;
  std::function<PointHandle(unsigned k)> term;
  PointHandle limit;
};

// Verifies d(term(k), limit) <= 2^-k for k = 0..depth, exactly.
AuditReport audit_cauchy(const SpaceOracle& oracle, const std::vector<CauchyProbe>& probes,
                         unsigned depth);

}  // namespace exm::audit
