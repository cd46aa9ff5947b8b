#pragma once

// Test-side oracles. Nothing here calls into the library's shortest-path or
// solver code, so agreement with it is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cubetile/fixtures.hpp"
#include "cubetile/mesh.hpp"
#include "cubetile/metric.hpp"
#include "cubetile/solver.hpp"

namespace cubetile::testing {

inline const VertexSet& base(const Graph& g) { return g.boundary(BoundaryLabel::B1); }
inline const VertexSet& top(const Graph& g) { return g.boundary(BoundaryLabel::B1bar); }

inline bool in(const VertexSet& s, VertexId v) { return std::binary_search(s.begin(), s.end(), v); }

// Every simple path that starts in a1 and ends at its first visit to a2.
inline std::vector<std::vector<VertexId>> simple_paths(const Graph& g, const VertexSet& a1,
                                                       const VertexSet& a2) {
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> stack;
  std::vector<bool> on(g.vertex_count(), false);
  std::function<void(VertexId)> go = [&](VertexId v) {
    stack.push_back(v);
    on[v] = true;
    if (in(a2, v)) {
      out.push_back(stack);
    } else {
      for (auto u : g.neighbors(v)) {
        if (!on[u]) go(u);
      }
    }
    on[v] = false;
    stack.pop_back();
  };
  for (auto s : a1) go(s);
  return out;
}

inline double sum_over(const std::vector<VertexId>& p, std::span<const double> m) {
  double s = 0.0;
  for (auto v : p) s += m[v];
  return s;
}

// Vertex-weighted Bellman-Ford: d(v) = least m-length of a path from a1 to v.
inline std::vector<double> bellman_ford(const Graph& g, std::span<const double> m,
                                        const VertexSet& a1) {
  const auto n = g.vertex_count();
  std::vector<double> d(n, kInfinity);
  for (auto s : a1) d[s] = m[s];
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (VertexId v = 0; v < n; ++v) {
      for (auto u : g.neighbors(v)) {
        if (d[v] + m[u] < d[u]) {
          d[u] = d[v] + m[u];
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return d;
}

inline double bf_distance(const Graph& g, std::span<const double> m, const VertexSet& a1,
                          const VertexSet& a2) {
  const auto d = bellman_ford(g, m, a1);
  double best = kInfinity;
  for (auto v : a2) best = std::min(best, d[v]);
  return best;
}

inline Metric random_metric(std::size_t n, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Metric m(n);
  for (auto& x : m) x = u(rng);
  return m;
}

inline double sup_gap(std::span<const double> a, std::span<const double> b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

struct Fixture {
  std::string name;
  Triangulation mesh;
};

// Small fixtures used across suites; all have at most 30 vertices.
inline const std::vector<Fixture>& small_fixtures() {
  static const std::vector<Fixture> list = {
      {"cube6", fixtures::cube6()},
      {"hourglass", fixtures::hourglass()},
      {"grid211", fixtures::kuhn_grid(2, 1, 1)},
      {"grid222_r7", fixtures::kuhn_grid(2, 2, 2, 7)},
      {"cube6_split8", fixtures::bisect_edges(fixtures::cube6(), 8, 3)},
      {"grid211_split6", fixtures::bisect_edges(fixtures::kuhn_grid(2, 1, 1), 6, 5)},
      {"grid221_r3_split6", fixtures::bisect_edges(fixtures::kuhn_grid(2, 2, 1, 3), 6, 11)},
  };
  return list;
}

// Solves once per fixture name and process.
inline const ExtremalResult& solved(const Fixture& f) {
  static std::map<std::string, ExtremalResult> cache;
  auto it = cache.find(f.name);
  if (it == cache.end()) {
    const Graph g = skeleton(f.mesh);
    it = cache.emplace(f.name, solve_extremal(g, base(g), top(g))).first;
  }
  return it->second;
}

// Hourglass optimum: pinch W = 4^(-1/6), all other vertices W/2, h = 2W.
inline double hourglass_pinch() { return std::pow(4.0, -1.0 / 6.0); }

}  // namespace cubetile::testing
