#include "cubetile/triple.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cubetile {

std::size_t ShortestPathDag::member_count() const {
  return static_cast<std::size_t>(std::count(member.begin(), member.end(), true));
}

std::size_t ShortestPathDag::edge_count() const {
  std::size_t e = 0;
  for (const auto& s : successors) e += s.size();
  return e;
}

std::optional<PathSeq> ShortestPathDag::surviving_path(const std::vector<bool>& removed) const {
  const auto n = member.size();
  std::vector<VertexId> parent(n, kNoVertex);
  std::vector<bool> seen(n, false);
  std::vector<bool> is_sink(n, false);
  for (auto v : sinks) is_sink[v] = true;
  std::vector<VertexId> queue;
  for (auto s : sources) {
    if (!removed[s] && !seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = queue[head];
    if (is_sink[v]) {
      PathSeq p;
      for (auto u = v; u != kNoVertex; u = parent[u]) p.vertices.push_back(u);
      std::reverse(p.vertices.begin(), p.vertices.end());
      return p;
    }
    for (auto u : successors[v]) {
      if (!removed[u] && !seen[u]) {
        seen[u] = true;
        parent[u] = v;
        queue.push_back(u);
      }
    }
  }
  return std::nullopt;
}

ShortestPathDag shortest_path_dag(const Graph& g, std::span<const double> m, const VertexSet& a1,
                                  const VertexSet& a2, double tol) {
  check_metric(g.vertex_count(), m);
  if (a1.empty() || a2.empty()) throw DomainError("shortest_path_dag needs nonempty vertex sets");
  const auto n = g.vertex_count();
  const auto from = shortest_path_tree(g, m, a1);
  const auto to = shortest_path_tree(g, m, a2);

  ShortestPathDag dag;
  dag.tol = tol;
  dag.length = kInfinity;
  for (auto v : a2) dag.length = std::min(dag.length, from.dist[v]);
  if (!std::isfinite(dag.length)) throw DomainError("target set is unreachable");
  dag.d_from = from.dist;
  dag.d_to = to.dist;
  dag.member.assign(n, false);
  dag.successors.resize(n);
  const double bound = dag.length + tol;
  for (VertexId v = 0; v < n; ++v) {
    dag.member[v] = dag.d_from[v] + dag.d_to[v] - m[v] <= bound;
  }
  for (VertexId u = 0; u < n; ++u) {
    if (!dag.member[u]) continue;
    for (auto v : g.neighbors(u)) {
      if (dag.member[v] && dag.d_from[u] + dag.d_to[v] <= bound) dag.successors[u].push_back(v);
    }
  }
  for (auto v : a1) {
    if (dag.member[v] && dag.d_from[v] <= m[v] + tol) dag.sources.push_back(v);
  }
  for (auto v : a2) {
    if (dag.member[v] && dag.d_to[v] <= m[v] + tol) dag.sinks.push_back(v);
  }
  return dag;
}

bool hits_all_shortest(const Graph& g, std::span<const double> m, const PathSeq& gamma,
                       const VertexSet& a1, const VertexSet& a2, double tol) {
  const auto dag = shortest_path_dag(g, m, a1, a2, tol);
  std::vector<bool> removed(g.vertex_count(), false);
  for (auto v : gamma.vertices) {
    if (v >= removed.size()) throw InvalidPathError("path vertex out of range");
    removed[v] = true;
  }
  return !dag.surviving_path(removed).has_value();
}

std::string_view to_string(TripleVerdict v) {
  switch (v) {
    case TripleVerdict::holds:
      return "holds";
    case TripleVerdict::fails:
      return "fails";
    case TripleVerdict::unknown:
      break;
  }
  return "unknown";
}

namespace {

class SideSearcher {
 public:
  SideSearcher(const ShortestPathDag& base, const ShortestPathDag& side, std::size_t budget,
               SideSearch& out)
      : base_(base), side_(side), budget_(budget), out_(out), n_(side.vertex_count()) {
    on_path_.assign(n_, false);
    is_sink_.assign(n_, false);
    for (auto v : side_.sinks) is_sink_[v] = true;
    reach_.resize(n_);
    for (VertexId v = 0; v < n_; ++v) {
      if (!side_.member[v]) continue;
      auto& r = reach_[v];
      r.assign(n_, false);
      std::vector<VertexId> todo{v};
      r[v] = true;
      while (!todo.empty()) {
        const auto x = todo.back();
        todo.pop_back();
        for (auto y : side_.successors[x]) {
          if (!r[y]) {
            r[y] = true;
            todo.push_back(y);
          }
        }
      }
    }
  }

  // Returns false when the search must stop (hit found or budget spent).
  bool run() {
    for (auto s : side_.sources) {
      if (!visit(s)) return false;
    }
    return true;
  }

  bool aborted() const { return aborted_; }

 private:
  bool visit(VertexId v) {
    if (++out_.expansions > budget_) {
      aborted_ = true;
      return false;
    }
    path_.push_back(v);
    on_path_[v] = true;
    const bool keep_going = expand(v);
    on_path_[v] = false;
    path_.pop_back();
    return keep_going;
  }

  bool expand(VertexId v) {
    std::vector<bool> key = on_path_;
    key.push_back(false);  // separator so the end vertex cannot alias a member bit
    key.resize(n_ + 1 + 32);
    for (int b = 0; b < 32; ++b) key[n_ + 1 + b] = (v >> b) & 1u;
    if (!seen_.insert(std::move(key)).second) return true;

    std::vector<bool> removed = on_path_;
    for (VertexId u = 0; u < n_; ++u) {
      if (reach_[v][u]) removed[u] = true;
    }
    if (auto pi = base_.surviving_path(removed)) {
      out_.refutations.push_back({PathSeq{path_}, std::move(*pi)});
      return true;
    }
    if (is_sink_[v]) {
      ++out_.candidates;
      if (auto pi = base_.surviving_path(on_path_); !pi) {
        out_.certificate = PathSeq{path_};
        return false;
      }
    }
    for (auto u : side_.successors[v]) {
      if (on_path_[u]) continue;
      if (!visit(u)) return false;
    }
    return true;
  }

  const ShortestPathDag& base_;
  const ShortestPathDag& side_;
  std::size_t budget_;
  SideSearch& out_;
  std::size_t n_;
  std::vector<std::vector<bool>> reach_;
  std::vector<bool> on_path_;
  std::vector<bool> is_sink_;
  std::vector<VertexId> path_;
  std::set<std::vector<bool>> seen_;
  bool aborted_ = false;
};

}  // namespace

SideSearch search_side(const Graph& g, std::span<const double> m, BoundaryLabel from,
                       const TripleOptions& opts) {
  const auto base = shortest_path_dag(g, m, g.boundary(BoundaryLabel::B1),
                                      g.boundary(BoundaryLabel::B1bar), opts.tol);
  const auto side = shortest_path_dag(g, m, g.boundary(from), g.boundary(opposite(from)), opts.tol);

  SideSearch out;
  out.common_witness = base.surviving_path(side.member);
  if (opts.budget == 0) {
    out.verdict = TripleVerdict::unknown;
    return out;
  }
  SideSearcher searcher(base, side, opts.budget, out);
  searcher.run();
  if (out.certificate) {
    out.verdict = TripleVerdict::holds;
    out.refutations.clear();
  } else if (searcher.aborted()) {
    out.verdict = TripleVerdict::unknown;
  } else {
    out.verdict = TripleVerdict::fails;
  }
  return out;
}

TripleDecision check_triple_intersection(const Triangulation& t, const ExtremalResult& res,
                                         const TripleOptions& opts) {
  const Graph g = skeleton(t);
  if (res.m0.size() != g.vertex_count()) {
    throw MismatchError("extremal metric does not match the mesh");
  }
  TripleDecision d;
  d.side2 = search_side(g, res.m0, BoundaryLabel::B2, opts);
  d.side3 = search_side(g, res.m0, BoundaryLabel::B3, opts);
  d.gamma = d.side2.certificate;
  d.delta = d.side3.certificate;
  if (d.gamma && d.delta) {
    d.verdict = TripleVerdict::holds;
  } else if (d.side2.verdict == TripleVerdict::fails || d.side3.verdict == TripleVerdict::fails) {
    d.verdict = TripleVerdict::fails;
  } else {
    d.verdict = TripleVerdict::unknown;
  }
  return d;
}

PerturbationCheck check_perturbation_inequality(const Graph& g, const ExtremalResult& res,
                                                const PathSeq& gamma,
                                                std::span<const double> omega,
                                                const PerturbationOptions& opts) {
  const auto& m0 = res.m0;
  check_metric(g.vertex_count(), m0, omega);
  g.check_path(gamma);
  const auto& a1 = g.boundary(BoundaryLabel::B1);
  const auto& a2 = g.boundary(BoundaryLabel::B1bar);
  const auto dag = shortest_path_dag(g, m0, a1, a2, opts.tol);
  const double h = dag.length;

  PerturbationCheck c;
  c.gap = kInfinity;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (auto v : g.neighbors(u)) {
      const double excess = dag.d_from[u] + dag.d_to[v] - h;
      if (excess > opts.tol) c.gap = std::min(c.gap, excess);
    }
  }
  for (auto v : a1) {
    // single-vertex paths
    const double excess = m0[v] - h;
    if (std::binary_search(a2.begin(), a2.end(), v) && excess > opts.tol) {
      c.gap = std::min(c.gap, excess);
    }
  }
  c.degenerate = !(c.gap > opts.tol);

  c.worst_margin = kInfinity;
  if (c.degenerate) {
    c.worst_margin = std::nan("");
  } else {
    const double span = std::min(c.gap, h);
    for (std::size_t i = 1; i <= opts.samples; ++i) {
      const double t = span * static_cast<double>(i) / static_cast<double>(opts.samples + 1);
      const auto mt = perturb(m0, gamma, t);
      const double lt = distance(g, mt, a1, a2).length;
      c.worst_margin = std::min(c.worst_margin, lt - (h + t));
    }
  }
  c.length_pass = !c.degenerate && c.worst_margin >= -opts.tol;

  for (auto v : gamma.vertices) c.lhs += (omega.empty() ? 1.0 : omega[v]) * m0[v] * m0[v];
  c.rhs = 1.0 / h;
  c.square_pass = c.lhs >= c.rhs - opts.tol;
  c.pass = c.square_pass && (c.degenerate || c.length_pass);
  return c;
}

}  // namespace cubetile
