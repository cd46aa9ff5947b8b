#include "cubetile/metric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace cubetile {

void check_metric(std::size_t vertex_count, std::span<const double> m,
                  std::span<const double> omega) {
  if (m.size() != vertex_count) {
    throw MismatchError("metric has " + std::to_string(m.size()) + " entries, graph has " +
                        std::to_string(vertex_count) + " vertices");
  }
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (!(m[v] >= 0.0) || !std::isfinite(m[v])) {
      throw DomainError("metric entry " + std::to_string(v) + " is negative or not finite");
    }
  }
  if (omega.empty()) return;
  if (omega.size() != vertex_count) {
    throw MismatchError("weights have " + std::to_string(omega.size()) + " entries, graph has " +
                        std::to_string(vertex_count) + " vertices");
  }
  for (std::size_t v = 0; v < omega.size(); ++v) {
    if (!(omega[v] > 0.0) || !std::isfinite(omega[v])) {
      throw DomainError("weight " + std::to_string(v) + " is not positive");
    }
  }
}

double path_length(const Graph& g, std::span<const double> m, const PathSeq& alpha,
                   std::span<const double> omega) {
  check_metric(g.vertex_count(), m, omega);
  g.check_path(alpha);
  double sum = 0.0;
  for (auto v : alpha.vertices) sum += omega.empty() ? m[v] : omega[v] * m[v];
  return sum;
}

PathSeq ShortestPathTree::path_to(VertexId v) const {
  PathSeq p;
  if (v >= dist.size() || !std::isfinite(dist[v])) return p;
  for (auto u = v; u != kNoVertex; u = parent[u]) p.vertices.push_back(u);
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

ShortestPathTree shortest_path_tree(const Graph& g, std::span<const double> cost,
                                    std::span<const VertexId> sources) {
  const auto n = g.vertex_count();
  ShortestPathTree tree{std::vector<double>(n, kInfinity), std::vector<VertexId>(n, kNoVertex)};
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (auto s : sources) {
    if (cost[s] < tree.dist[s]) {
      tree.dist[s] = cost[s];
      queue.emplace(cost[s], s);
    }
  }
  std::vector<bool> done(n, false);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = true;
    for (auto u : g.neighbors(v)) {
      const double nd = d + cost[u];
      if (nd < tree.dist[u]) {
        tree.dist[u] = nd;
        tree.parent[u] = v;
        queue.emplace(nd, u);
      }
    }
  }
  return tree;
}

Distance distance(const Graph& g, std::span<const double> m, const VertexSet& a1,
                  const VertexSet& a2, std::span<const double> omega) {
  check_metric(g.vertex_count(), m, omega);
  if (a1.empty() || a2.empty()) throw DomainError("distance needs nonempty vertex sets");
  std::vector<double> cost(m.begin(), m.end());
  if (!omega.empty()) {
    for (std::size_t v = 0; v < cost.size(); ++v) cost[v] *= omega[v];
  }
  const auto tree = shortest_path_tree(g, cost, a1);
  VertexId best = kNoVertex;
  for (auto v : a2) {
    if (v >= g.vertex_count()) throw ReferenceError("vertex set cites unknown vertex");
    if (best == kNoVertex || tree.dist[v] < tree.dist[best]) best = v;
  }
  if (!std::isfinite(tree.dist[best])) throw DomainError("target set is unreachable");
  return {tree.dist[best], tree.path_to(best)};
}

double volume(std::span<const double> m, std::span<const double> omega) {
  double sum = 0.0;
  for (std::size_t v = 0; v < m.size(); ++v) {
    const double c = m[v] * m[v] * m[v];
    sum += omega.empty() ? c : omega[v] * c;
  }
  return sum;
}

double normalized_length(const Graph& g, std::span<const double> m, const VertexSet& a1,
                         const VertexSet& a2, std::span<const double> omega) {
  const double vol = volume(m, omega);
  if (!(vol > 0.0)) throw DomainError("normalized length of a zero-volume metric");
  const double l = distance(g, m, a1, a2).length;
  return l * l * l / vol;
}

Metric perturb(std::span<const double> m, const PathSeq& alpha, double t) {
  if (!(t >= 0.0)) throw DomainError("perturbation parameter must be nonnegative");
  Metric out(m.begin(), m.end());
  for (auto v : alpha.vertices) {
    if (v >= out.size()) throw InvalidPathError("path vertex out of range");
    out[v] += t;
  }
  return out;
}

double volume_derivative(std::span<const double> m, const PathSeq& alpha,
                         std::span<const double> omega) {
  double sum = 0.0;
  for (auto v : alpha.vertices) {
    if (v >= m.size()) throw InvalidPathError("path vertex out of range");
    sum += (omega.empty() ? 1.0 : omega[v]) * m[v] * m[v];
  }
  return 3.0 * sum;
}

Metric scaled(std::span<const double> m, double c) {
  Metric out(m.begin(), m.end());
  for (auto& x : out) x *= c;
  return out;
}

}  // namespace cubetile
