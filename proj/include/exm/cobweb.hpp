#pragma once

#include "exm/error.hpp"
#include "exm/rat.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exm::cobweb {

// The cobweb spun over a vortex set V: a thread of length eps joins every
// pair of vortices, and distance is measured along threads. V is any totally
// ordered identifier type; downstream constructions instantiate it with
// structured tags.
//
// Canonical representation: a vortex is (v, v, 0); an interior thread point
// is (u, v, t) with u < v and 0 < t < eps, t measured from u.
template <class V>
struct Point {
  V u{};
  V v{};
  Rat t{0};

  bool is_vortex() const { return u == v; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.u == b.u && a.v == b.v && a.t == b.t;
  }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.u < b.u) return true;
    if (b.u < a.u) return false;
    if (a.v < b.v) return true;
    if (b.v < a.v) return false;
    return a.t < b.t;
  }
};

template <class V>
Point<V> vortex(V v) {
  return Point<V>{v, v, Rat(0)};
}

// Canonicalizes endpoint collapse (t=0, t=eps) and orientation ((v,u,t) vs
// (u,v,eps-t)).
template <class V>
Point<V> make_point(V a, V b, Rat t, const Rat& eps) {
  if (a == b) throw validation_error("thread endpoints must be distinct vortices");
  if (t < 0 || t > eps) throw validation_error("thread parameter outside [0, eps]");
  if (t == 0) return vortex(std::move(a));
  if (t == eps) return vortex(std::move(b));
  if (b < a) return Point<V>{std::move(b), std::move(a), eps - t};
  return Point<V>{std::move(a), std::move(b), std::move(t)};
}

namespace detail {

// Thread endpoints reachable from p along its own thread, with exact costs.
// A vortex reaches itself at cost zero.
template <class V>
struct Exit {
  V at;
  Rat cost;
};

template <class V>
std::array<Exit<V>, 2> exits(const Point<V>& p, const Rat& eps, std::size_t& count) {
  if (p.is_vortex()) {
    count = 1;
    return {Exit<V>{p.u, Rat(0)}, Exit<V>{}};
  }
  count = 2;
  return {Exit<V>{p.u, p.t}, Exit<V>{p.v, eps - p.t}};
}

template <class V>
bool same_thread(const Point<V>& p, const Point<V>& q) {
  return !p.is_vortex() && !q.is_vortex() && p.u == q.u && p.v == q.v;
}

}  // namespace detail

// Closed-form intrinsic distance. Any path either stays on one thread or
// leaves through a thread endpoint, hops vortices (each hop costs eps), and
// enters the target thread through an endpoint; with all vortex pairs at
// distance eps, at most one hop can be optimal.
template <class V>
Rat distance(const Rat& eps, const Point<V>& p, const Point<V>& q) {
  if (p == q) return Rat(0);
  std::optional<Rat> best;
  auto consider = [&best](Rat c) {
    if (!best || c < *best) best = std::move(c);
  };
  if (detail::same_thread(p, q)) consider(rat_abs(p.t - q.t));
  std::size_t np = 0, nq = 0;
  const auto ep = detail::exits(p, eps, np);
  const auto eq = detail::exits(q, eps, nq);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nq; ++j) {
      Rat c = ep[i].cost + eq[j].cost;
      if (!(ep[i].at == eq[j].at)) c += eps;
      consider(std::move(c));
    }
  return *best;
}

// Distance between two points sharing a thread (the only legs a witness path
// may use). Throws if the points are not co-threaded.
template <class V>
Rat leg_distance(const Rat& eps, const Point<V>& a, const Point<V>& b) {
  if (a == b) return Rat(0);
  if (a.is_vortex() && b.is_vortex()) return eps;
  if (a.is_vortex()) return leg_distance(eps, b, a);
  if (b.is_vortex()) {
    if (a.u == b.u) return a.t;
    if (a.v == b.u) return eps - a.t;
    throw validation_error("witness leg endpoints share no thread");
  }
  if (!detail::same_thread(a, b)) throw validation_error("witness leg endpoints share no thread");
  return rat_abs(a.t - b.t);
}

// Breakpoint certificate for distance(). Ties prefer fewer breakpoints, then
// lexicographically least intermediate vortices.
template <class V>
std::vector<Point<V>> witness_path(const Rat& eps, const Point<V>& p, const Point<V>& q) {
  if (p == q) return {p};
  const Rat best = distance(eps, p, q);

  std::optional<std::vector<Point<V>>> chosen;
  auto consider = [&](const std::vector<V>& mids) {
    std::vector<Point<V>> path;
    path.push_back(p);
    for (const auto& m : mids) {
      auto w = vortex(m);
      if (!(path.back() == w)) path.push_back(std::move(w));
    }
    if (!(path.back() == q)) path.push_back(q);
    // Validate the candidate realizes the optimum.
    Rat len(0);
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      len += leg_distance(eps, path[i], path[i + 1]);
    if (len != best) return;
    if (!chosen || path.size() < chosen->size() ||
        (path.size() == chosen->size() && path < *chosen))
      chosen = std::move(path);
  };

  if (detail::same_thread(p, q) && rat_abs(p.t - q.t) == best) consider({});
  std::size_t np = 0, nq = 0;
  const auto ep = detail::exits(p, eps, np);
  const auto eq = detail::exits(q, eps, nq);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nq; ++j) {
      if (ep[i].at == eq[j].at)
        consider({ep[i].at});
      else
        consider({ep[i].at, eq[j].at});
    }
  return *chosen;
}

// Sum of consecutive co-threaded legs; the certificate check.
template <class V>
Rat path_length(const Rat& eps, const std::vector<Point<V>>& path) {
  Rat total(0);
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    total += leg_distance(eps, path[i], path[i + 1]);
  return total;
}

// Independent shortest-path oracle: Dijkstra over the explicit graph with
// nodes {p, q} plus a finite vortex universe, every vortex pair at weight
// eps, p and q tied to their thread endpoints at parameter cost, and the
// direct same-thread edge when applicable. Exact arithmetic throughout.
// Deliberately shares no code with distance() above.
template <class V>
Rat oracle_distance(const Rat& eps, std::vector<V> universe, const Point<V>& p, const Point<V>& q) {
  if (p == q) return Rat(0);
  auto add_endpoints = [&universe](const Point<V>& x) {
    universe.push_back(x.u);
    if (!(x.u == x.v)) universe.push_back(x.v);
  };
  add_endpoints(p);
  add_endpoints(q);
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  const std::size_t nv = universe.size();
  auto vid = [&universe](const V& v) {
    return static_cast<std::size_t>(
        std::lower_bound(universe.begin(), universe.end(), v) - universe.begin());
  };
  // Nodes: vortices [0, nv), then p (nv) and q (nv+1) when interior.
  std::size_t n = nv;
  std::size_t pid, qid;
  if (p.is_vortex()) pid = vid(p.u); else pid = n++;
  if (q.is_vortex()) qid = vid(q.u); else qid = n++;

  std::vector<std::vector<std::optional<Rat>>> w(n, std::vector<std::optional<Rat>>(n));
  auto connect = [&w](std::size_t a, std::size_t b, const Rat& c) {
    if (a == b) return;
    if (!w[a][b] || c < *w[a][b]) w[a][b] = w[b][a] = c;
  };
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i + 1; j < nv; ++j) connect(i, j, eps);
  if (!p.is_vortex()) {
    connect(pid, vid(p.u), p.t);
    connect(pid, vid(p.v), eps - p.t);
  }
  if (!q.is_vortex()) {
    connect(qid, vid(q.u), q.t);
    connect(qid, vid(q.v), eps - q.t);
  }
  if (detail::same_thread(p, q)) connect(pid, qid, rat_abs(p.t - q.t));

  // Dijkstra with linear-scan extraction; the graphs here are tiny.
  std::vector<std::optional<Rat>> dist(n);
  std::vector<bool> done(n, false);
  dist[pid] = Rat(0);
  for (;;) {
    std::optional<std::size_t> u;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && dist[i] && (!u || *dist[i] < *dist[*u])) u = i;
    if (!u) break;
    if (*u == qid) return *dist[qid];
    done[*u] = true;
    for (std::size_t v = 0; v < n; ++v)
      if (w[*u][v]) {
        Rat cand = *dist[*u] + *w[*u][v];
        if (!dist[v] || cand < *dist[v]) dist[v] = std::move(cand);
      }
  }
  throw std::logic_error("oracle graph is connected by construction");
}

// Concrete space for the CLI: integer vortex identifiers.
struct Space {
  std::vector<std::uint32_t> vortices;
  Rat eps{2};

  std::string describe() const {
    return "cobweb(|V|=" + std::to_string(vortices.size()) + ",eps=" + rat_to_string(eps) + ")";
  }
};

using IntPoint = Point<std::uint32_t>;

inline std::string format_point(const IntPoint& p) {
  if (p.is_vortex()) return "v:" + std::to_string(p.u);
  return "i:" + std::to_string(p.u) + ":" + std::to_string(p.v) + ":" + rat_to_string(p.t);
}

}  // namespace exm::cobweb
