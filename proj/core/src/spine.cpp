#include <algorithm>
#include <set>

#include "cubetile/mesh.hpp"

namespace cubetile {

namespace {

struct SpineSearch {
  const Graph& g;
  std::vector<bool> blocked;  // B1 or B1bar
  std::vector<bool> is_top;
  std::size_t budget;
  std::size_t explored = 0;
  bool out_of_budget = false;
  std::set<std::vector<VertexId>> interiors{};
  std::vector<VertexId> stack{};
  std::vector<bool> on_stack{};

  // Extends the current interior prefix; stops once two distinct interiors exist.
  void extend(VertexId v) {
    if (out_of_budget || interiors.size() > 1) return;
    if (++explored > budget) {
      out_of_budget = true;
      return;
    }
    stack.push_back(v);
    on_stack[v] = true;
    for (auto u : g.neighbors(v)) {
      if (is_top[u]) {
        interiors.insert(stack);
        break;
      }
    }
    for (auto u : g.neighbors(v)) {
      if (!blocked[u] && !on_stack[u]) extend(u);
      if (out_of_budget || interiors.size() > 1) break;
    }
    on_stack[v] = false;
    stack.pop_back();
  }
};

bool crosses_off_base(const Graph& g, BoundaryLabel from, const std::vector<bool>& removed) {
  const auto n = g.vertex_count();
  std::vector<bool> target(n, false);
  for (auto v : g.boundary(opposite(from))) target[v] = true;
  std::vector<bool> seen(n, false);
  std::vector<VertexId> todo;
  for (auto v : g.boundary(from)) {
    if (!removed[v]) {
      seen[v] = true;
      todo.push_back(v);
    }
  }
  while (!todo.empty()) {
    const auto v = todo.back();
    todo.pop_back();
    if (target[v]) return true;
    for (auto u : g.neighbors(v)) {
      if (!removed[u] && !seen[u]) {
        seen[u] = true;
        todo.push_back(u);
      }
    }
  }
  return false;
}

}  // namespace

SpineResult detect_spine(const Triangulation& t, std::size_t budget) {
  const Graph g = skeleton(t);
  const auto n = g.vertex_count();
  SpineSearch s{g, std::vector<bool>(n, false), std::vector<bool>(n, false), budget};
  s.on_stack.assign(n, false);
  for (auto v : g.boundary(BoundaryLabel::B1)) s.blocked[v] = true;
  for (auto v : g.boundary(BoundaryLabel::B1bar)) {
    s.blocked[v] = true;
    s.is_top[v] = true;
  }

  // Paths with empty interior: a vertex on both patches, or a direct edge.
  std::size_t direct = 0;
  for (auto a : g.boundary(BoundaryLabel::B1)) {
    if (s.is_top[a]) ++direct;
    for (auto b : g.neighbors(a)) {
      if (s.is_top[b]) ++direct;
    }
  }

  SpineResult result;
  if (direct > 1) {
    result.outcome = SpineOutcome::absent;
    return result;
  }

  std::set<VertexId> starts;
  for (auto a : g.boundary(BoundaryLabel::B1)) {
    for (auto u : g.neighbors(a)) {
      if (!s.blocked[u]) starts.insert(u);
    }
  }
  if (budget == 0 && !starts.empty()) {
    result.outcome = SpineOutcome::unknown;
    return result;
  }
  for (auto u : starts) {
    s.extend(u);
    if (s.out_of_budget || s.interiors.size() > 1) break;
  }
  result.explored = s.explored;
  if (s.out_of_budget) {
    result.outcome = SpineOutcome::unknown;
    return result;
  }
  if (s.interiors.size() + direct != 1) {
    result.outcome = SpineOutcome::absent;
    return result;
  }

  PathSeq path;
  std::vector<bool> removed = s.blocked;
  if (direct == 1) {
    for (auto a : g.boundary(BoundaryLabel::B1)) {
      if (s.is_top[a]) {
        path.vertices = {a};
      } else {
        for (auto b : g.neighbors(a)) {
          if (s.is_top[b]) path.vertices = {a, b};
        }
      }
    }
  } else {
    const auto& interior = *s.interiors.begin();
    VertexId a = 0;
    VertexId b = 0;
    for (auto u : g.neighbors(interior.front())) {
      if (s.blocked[u] && !s.is_top[u]) {
        a = u;
        break;
      }
    }
    for (auto u : g.neighbors(interior.back())) {
      if (s.is_top[u]) {
        b = u;
        break;
      }
    }
    path.vertices.push_back(a);
    path.vertices.insert(path.vertices.end(), interior.begin(), interior.end());
    path.vertices.push_back(b);
    for (auto v : interior) removed[v] = true;
  }

  if (crosses_off_base(g, BoundaryLabel::B2, removed) ||
      crosses_off_base(g, BoundaryLabel::B3, removed)) {
    result.outcome = SpineOutcome::absent;
    return result;
  }
  result.outcome = SpineOutcome::found;
  result.path = std::move(path);
  return result;
}

}  // namespace cubetile
