#include "exm/audit.hpp"

#include "exm/error.hpp"

#include <array>
#include <atomic>
#include <set>
#include <thread>

namespace exm::audit {

std::vector<std::vector<Violation>> run_checks(
    std::size_t n, int workers,
    const std::function<std::vector<Violation>(std::size_t)>& check) {
  std::vector<std::vector<Violation>> slots(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) slots[i] = check(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        slots[i] = check(i);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return slots;
}

void apply_checks(AuditReport& rep, std::size_t n, int workers,
                  const std::function<std::vector<Violation>(std::size_t)>& check) {
  auto slots = run_checks(n, workers, check);
  std::size_t failed = 0;
  for (auto& s : slots) {
    if (!s.empty()) ++failed;
    for (auto& v : s) rep.violations.push_back(std::move(v));
  }
  rep.attempted += n;
  rep.passed += n - failed;
}

namespace {

// Shared scaffolding for the two triangle-style audits.
AuditReport triple_audit(const SpaceOracle& oracle, std::string name, bool strong,
                         std::uint64_t n_triples, std::uint64_t seed, int workers) {
  AuditReport rep;
  rep.audit = std::move(name);
  rep.space = oracle.descriptor;
  rep.seed = seed;
  rep.sample_sizes["triples"] = n_triples;

  Rng rng(seed);
  std::vector<std::array<PointHandle, 3>> triples;
  triples.reserve(n_triples);
  for (std::uint64_t i = 0; i < n_triples; ++i)
    triples.push_back({oracle.sample(rng), oracle.sample(rng), oracle.sample(rng)});

  auto check = [&](std::size_t i) -> std::vector<Violation> {
    const PointHandle& x = triples[i][0];
    const PointHandle& y = triples[i][1];
    const PointHandle& z = triples[i][2];
    std::vector<Violation> out;
    const Rat dxy = oracle.distance(x, y);
    const Rat dyx = oracle.distance(y, x);
    const Rat dyz = oracle.distance(y, z);
    const Rat dxz = oracle.distance(x, z);
    auto record = [&](const char* kind, const Rat& lhs, const Rat& rhs) {
      out.push_back(Violation{kind,
                              {oracle.format(x), oracle.format(y), oracle.format(z)},
                              {rat_to_string(lhs), rat_to_string(rhs)},
                              "triple index " + std::to_string(i)});
    };
    if (dxy != dyx) record("symmetry", dxy, dyx);
    if (dxy < 0) record("nonnegative", dxy, Rat(0));
    const bool same = oracle.format(x) == oracle.format(y);
    if (same && dxy != 0) record("identity", dxy, Rat(0));
    if (!same && dxy == 0) record("indiscernible", dxy, Rat(0));
    if (strong) {
      const Rat bound = rat_max(dxy, dyz);
      if (dxz > bound) record("strong-triangle", dxz, bound);
    } else {
      if (dxz > dxy + dyz) record("triangle", dxz, dxy + dyz);
    }
    return out;
  };
  apply_checks(rep, triples.size(), workers, check);
  return rep;
}

}  // namespace

AuditReport audit_metric(const SpaceOracle& oracle, std::uint64_t n_triples, std::uint64_t seed,
                         int workers) {
  return triple_audit(oracle, "metric", false, n_triples, seed, workers);
}

AuditReport audit_ultrametric(const SpaceOracle& oracle, std::uint64_t n_triples,
                              std::uint64_t seed, int workers) {
  return triple_audit(oracle, "ultrametric", true, n_triples, seed, workers);
}

AuditReport audit_ultrametric_exhaustive(const SpaceOracle& oracle,
                                         const std::vector<PointHandle>& carrier, int workers) {
  AuditReport rep;
  rep.audit = "ultrametric-exhaustive";
  rep.space = oracle.descriptor;
  rep.sample_sizes["carrier"] = carrier.size();
  const std::size_t n = carrier.size();
  const std::size_t total = n * n * n;
  rep.sample_sizes["triples"] = total;

  auto check = [&](std::size_t idx) -> std::vector<Violation> {
    const auto& x = carrier[idx / (n * n)];
    const auto& y = carrier[(idx / n) % n];
    const auto& z = carrier[idx % n];
    const Rat dxz = oracle.distance(x, z);
    const Rat bound = rat_max(oracle.distance(x, y), oracle.distance(y, z));
    if (dxz <= bound) return {};
    return {Violation{"strong-triangle",
                      {oracle.format(x), oracle.format(y), oracle.format(z)},
                      {rat_to_string(dxz), rat_to_string(bound)},
                      "exhaustive triple " + std::to_string(idx)}};
  };
  apply_checks(rep, total, workers, check);
  return rep;
}

AuditReport audit_distinct_distances(const SpaceOracle& oracle, std::uint64_t n_points,
                                     std::uint64_t seed) {
  AuditReport rep;
  rep.audit = "distinct-distances";
  rep.space = oracle.descriptor;
  rep.seed = seed;
  rep.sample_sizes["points"] = n_points;

  Rng rng(seed);
  std::vector<PointHandle> pts;
  pts.reserve(n_points);
  for (std::uint64_t i = 0; i < n_points; ++i) pts.push_back(oracle.sample(rng));

  // Distinct points, identified by their formatted representation (formats
  // are canonical across the library).
  std::set<std::string> distinct;
  for (const auto& p : pts) distinct.insert(oracle.format(p));

  std::set<Rat> values;
  std::set<Rat> nonzero;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) {
      Rat d = oracle.distance(pts[i], pts[j]);
      if (d != 0) nonzero.insert(d);
      values.insert(std::move(d));
    }

  rep.add_stat("distinct_points", std::to_string(distinct.size()));
  rep.add_stat("distinct_distances", std::to_string(values.size()));
  rep.add_stat("distinct_nonzero_distances", std::to_string(nonzero.size()));
  rep.add_stat("asserted", oracle.ultrametric_expected ? "true" : "false");

  rep.attempted = 1;
  if (oracle.ultrametric_expected && !distinct.empty() && nonzero.size() > distinct.size() - 1) {
    rep.violations.push_back(Violation{
        "ultrametric-distinct-bound",
        {},
        {std::to_string(nonzero.size()), std::to_string(distinct.size() - 1)},
        "nonzero distinct distances exceed n-1"});
  }
  rep.passed = rep.attempted - rep.violations.size();
  return rep;
}

AuditReport audit_lipschitz(const LipschitzMap& map, const SpaceOracle& domain,
                            const SpaceOracle& codomain, std::uint64_t n_pairs,
                            std::uint64_t seed, int workers) {
  AuditReport rep;
  rep.audit = "lipschitz:" + map.name;
  rep.space = domain.descriptor + " -> " + codomain.descriptor;
  rep.seed = seed;
  rep.sample_sizes["pairs"] = n_pairs;

  Rng rng(seed);
  std::vector<std::array<PointHandle, 2>> pairs;
  pairs.reserve(n_pairs);
  for (std::uint64_t i = 0; i < n_pairs; ++i)
    pairs.push_back({domain.sample(rng), domain.sample(rng)});

  auto check = [&](std::size_t i) -> std::vector<Violation> {
    const auto& [x, y] = pairs[i];
    const Rat upstream = domain.distance(x, y);
    const Rat downstream = codomain.distance(map.apply(x), map.apply(y));
    if (downstream <= upstream) return {};
    return {Violation{"lipschitz",
                      {domain.format(x), domain.format(y)},
                      {rat_to_string(downstream), rat_to_string(upstream)},
                      "pair index " + std::to_string(i)}};
  };
  apply_checks(rep, pairs.size(), workers, check);
  return rep;
}

AuditReport audit_chain(const SpaceOracle& oracle, const std::vector<PointHandle>& sample,
                        const Rat& eps_chain, int workers) {
  if (sample.empty()) throw validation_error("chain audit needs a nonempty sample");
  AuditReport rep;
  rep.audit = "chain";
  rep.space = oracle.descriptor;
  rep.sample_sizes["points"] = sample.size();
  rep.add_stat("eps_chain", rat_to_string(eps_chain));

  const std::size_t n = sample.size();
  // Adjacency rows computed in parallel, folded into a union-find serially.
  std::vector<std::vector<std::uint32_t>> adj(n);
  auto none = run_checks(n, workers, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j)
      if (oracle.distance(sample[i], sample[j]) <= eps_chain)
        adj[i].push_back(static_cast<std::uint32_t>(j));
    return std::vector<Violation>{};
  });
  (void)none;

  std::vector<std::uint32_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : adj[i]) parent[find(static_cast<std::uint32_t>(i))] = find(j);

  std::set<std::uint32_t> roots;
  for (std::size_t i = 0; i < n; ++i) roots.insert(find(static_cast<std::uint32_t>(i)));
  rep.add_stat("note", "chain components are finite evidence, not a connectedness proof");
  rep.add_stat("components", std::to_string(roots.size()));
  rep.attempted = 1;
  rep.passed = 1;
  return rep;
}

AuditReport audit_cauchy(const SpaceOracle& oracle, const std::vector<CauchyProbe>& probes,
                         unsigned depth) {
  AuditReport rep;
  rep.audit = "cauchy";
  rep.space = oracle.descriptor;
  rep.sample_sizes["probes"] = probes.size();
  rep.sample_sizes["depth"] = depth;

  for (const auto& probe : probes) {
    for (unsigned k = 0; k <= depth; ++k) {
      ++rep.attempted;
      const PointHandle term = probe.term(k);
      const Rat d = oracle.distance(term, probe.limit);
      const Rat bound = pow2_inv(k);
      if (d <= bound) {
        ++rep.passed;
      } else {
        rep.violations.push_back(Violation{"cauchy:" + probe.name,
                                           {oracle.format(term), oracle.format(probe.limit)},
                                           {rat_to_string(d), rat_to_string(bound)},
                                           "step " + std::to_string(k)});
      }
    }
  }
  return rep;
}

}  // namespace exm::audit
