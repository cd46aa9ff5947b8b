#include "cubetile/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>

#include <Eigen/Dense>

#include "cubetile/triple.hpp"

namespace cubetile {

namespace {

void check_terminals(const Graph& g, const VertexSet& a1, const VertexSet& a2) {
  if (a1.empty() || a2.empty()) throw DomainError("terminal vertex sets must be nonempty");
  for (auto v : a1) {
    if (v >= g.vertex_count()) throw ReferenceError("terminal set cites unknown vertex");
  }
  for (auto v : a2) {
    if (v >= g.vertex_count()) throw ReferenceError("terminal set cites unknown vertex");
    if (std::binary_search(a1.begin(), a1.end(), v)) {
      throw DomainError("terminal sets intersect at vertex " + std::to_string(v));
    }
  }
}

// Restricted program over the vertices touched by the active paths:
//   minimize sum w_i |x_i|^3  s.t.  sum_{i in path k} x_i >= 1.
// |x|^3 makes x >= 0 automatic (constraint coefficients are nonnegative) and
// keeps the objective smooth, so only the path constraints need a barrier.
class BarrierProblem {
 public:
  BarrierProblem(std::vector<std::vector<int>> rows, std::vector<double> w)
      : rows_(std::move(rows)), w_(std::move(w)) {}

  std::size_t size() const { return w_.size(); }
  std::size_t constraints() const { return rows_.size(); }

  double objective(const Eigen::VectorXd& x) const {
    double f = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) f += w_[i] * std::abs(x[i]) * x[i] * x[i];
    return f;
  }

  Eigen::VectorXd slacks(const Eigen::VectorXd& x) const {
    Eigen::VectorXd s(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      double a = 0.0;
      for (int i : rows_[k]) a += x[i];
      s[static_cast<Eigen::Index>(k)] = a - 1.0;
    }
    return s;
  }

  double row_dot(std::size_t k, const Eigen::VectorXd& d) const {
    double a = 0.0;
    for (int i : rows_[k]) a += d[i];
    return a;
  }

  // Minimizes t f(x) - sum log s_k along the central path until the duality
  // gap bound K/t falls below gap * f. x must be strictly feasible.
  std::size_t solve(Eigen::VectorXd& x, double gap, std::size_t max_newton) const {
    const auto n = static_cast<Eigen::Index>(size());
    const double k = static_cast<double>(constraints());
    double t = k / objective(x);
    std::size_t newton = 0;
    for (int stage = 0; stage < 200; ++stage) {
      newton += center(x, t, max_newton);
      if (k / t <= gap * objective(x)) break;
      t *= 20.0;
    }
    (void)n;
    return newton;
  }

 private:
  double phi(const Eigen::VectorXd& x, double t) const {
    const auto s = slacks(x);
    double b = 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (!(s[k] > 0.0)) return kInfinity;
      b -= std::log(s[k]);
    }
    return t * objective(x) + b;
  }

  std::size_t center(Eigen::VectorXd& x, double t, std::size_t max_newton) const {
    const auto n = static_cast<Eigen::Index>(size());
    std::size_t it = 0;
    double last_decrement = kInfinity;
    for (; it < max_newton; ++it) {
      const auto s = slacks(x);
      Eigen::VectorXd grad(n);
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        grad[i] = 3.0 * t * w_[i] * std::abs(x[i]) * x[i];
        hess(i, i) = 6.0 * t * w_[i] * std::abs(x[i]);
      }
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        const double inv = 1.0 / s[static_cast<Eigen::Index>(k)];
        const double inv2 = inv * inv;
        for (int i : rows_[k]) {
          grad[i] -= inv;
          for (int j : rows_[k]) hess(i, j) += inv2;
        }
      }
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      Eigen::VectorXd step = ldlt.solve(-grad);
      if (ldlt.info() != Eigen::Success || !step.allFinite()) {
        hess.diagonal().array() += 1e-12 * hess.diagonal().cwiseAbs().maxCoeff();
        step = Eigen::LDLT<Eigen::MatrixXd>(hess).solve(-grad);
        if (!step.allFinite()) break;
      }
      const double decrement = -grad.dot(step);
      if (!(decrement > 1e-11)) break;
      // Near the center the decrement should shrink quadratically; once it
      // stalls the remaining change is rounding noise.
      if (decrement < 1e-2 && decrement > 0.25 * last_decrement) break;
      last_decrement = decrement;

      // Largest step keeping every slack positive, with a fraction-to-boundary margin.
      double alpha = 1.0;
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        const double ds = row_dot(k, step);
        if (ds < 0.0) alpha = std::min(alpha, -0.99 * s[static_cast<Eigen::Index>(k)] / ds);
      }
      if (decrement > 1e-2) {
        const double f0 = phi(x, t);
        int tries = 0;
        while (phi(x + alpha * step, t) > f0 - 0.25 * alpha * decrement + 1e-13 * std::abs(f0) &&
               tries < 60) {
          alpha *= 0.5;
          ++tries;
        }
        if (tries == 60) break;
      }
      x += alpha * step;
      if (alpha * step.cwiseAbs().maxCoeff() <= 1e-16 * x.cwiseAbs().maxCoeff()) break;
    }
    return it;
  }

  std::vector<std::vector<int>> rows_;
  std::vector<double> w_;
};

}  // namespace

ExtremalResult solve_extremal(const Graph& g, const VertexSet& a1, const VertexSet& a2,
                              std::span<const double> omega, const SolverOptions& opts) {
  const auto n = g.vertex_count();
  check_terminals(g, a1, a2);
  if (!omega.empty()) check_metric(n, Metric(n, 0.0), omega);
  if (!(opts.tolerance > 0.0) || opts.max_outer_iterations == 0 || opts.paths_per_round == 0) {
    throw DomainError("solver options out of range");
  }

  // The barrier leaves an error of order sqrt(gap) in m, so tightness is judged
  // at that scale rather than at the separation tolerance.
  const double tight = std::max(100.0 * opts.tolerance, std::sqrt(opts.barrier_gap));

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> uniform(0.5, 1.5);
  Metric start(n, 1.0);
  if (opts.seed != 0) {
    for (auto& x : start) x = uniform(rng);
  }

  std::vector<PathSeq> paths{distance(g, start, a1, a2).path};
  std::set<PathSeq> known(paths.begin(), paths.end());

  ExtremalResult res;
  auto& diag = res.diagnostics;
  Metric m(n, 0.0);
  double previous_lambda = kInfinity;

  for (diag.outer_iterations = 1; diag.outer_iterations <= opts.max_outer_iterations;
       ++diag.outer_iterations) {
    // Index the vertices used by the active paths.
    std::vector<int> index(n, -1);
    std::vector<VertexId> used;
    for (const auto& p : paths) {
      for (auto v : p.vertices) {
        if (index[v] < 0) {
          index[v] = static_cast<int>(used.size());
          used.push_back(v);
        }
      }
    }
    std::vector<std::vector<int>> rows;
    rows.reserve(paths.size());
    for (const auto& p : paths) {
      std::vector<int> r;
      for (auto v : p.vertices) r.push_back(index[v]);
      rows.push_back(std::move(r));
    }
    std::vector<double> w(used.size(), 1.0);
    if (!omega.empty()) {
      for (std::size_t i = 0; i < used.size(); ++i) w[i] = omega[used[i]];
    }
    BarrierProblem problem(std::move(rows), std::move(w));

    Eigen::VectorXd x(static_cast<Eigen::Index>(used.size()));
    for (std::size_t i = 0; i < used.size(); ++i) {
      x[static_cast<Eigen::Index>(i)] = start[used[i]];
    }
    x *= 2.0 / (problem.slacks(x).minCoeff() + 1.0);
    diag.newton_iterations += problem.solve(x, opts.barrier_gap, opts.max_newton_iterations);

    std::fill(m.begin(), m.end(), 0.0);
    for (std::size_t i = 0; i < used.size(); ++i) {
      m[used[i]] = std::max(0.0, x[static_cast<Eigen::Index>(i)]);
    }
    const double restricted = volume(m, omega);
    const double lambda = 1.0 / restricted;
    diag.master_objective.push_back(lambda);
    if (lambda > previous_lambda * (1.0 + 1e-12) + 1e-12) diag.master_monotone = false;
    previous_lambda = lambda;

    // Separation: every A1-A2 path of m-length below the restricted optimum.
    const double bound = problem.slacks(x).minCoeff() + 1.0 - opts.tolerance;
    const auto tree = shortest_path_tree(g, m, a1);
    std::vector<std::pair<double, PathSeq>> violated;
    for (auto v : a2) {
      if (tree.dist[v] < bound) violated.emplace_back(tree.dist[v], tree.path_to(v));
    }
    std::sort(violated.begin(), violated.end());
    std::size_t added = 0;
    for (auto& [len, p] : violated) {
      if (added == opts.paths_per_round) break;
      if (known.insert(p).second) {
        paths.push_back(std::move(p));
        ++added;
      }
    }
    if (!violated.empty() && added == 0) break;  // numerically stuck
    if (violated.empty()) {
      const double scale = 1.0 / std::cbrt(restricted);
      for (auto& v : m) v *= scale;
      diag.residual = stationarity_residual(g, m, a1, a2, omega, tight);
      diag.converged = diag.residual <= opts.tolerance;
      break;
    }
  }
  diag.outer_iterations = std::min(diag.outer_iterations, opts.max_outer_iterations);
  diag.constraint_count = paths.size();

  if (!diag.converged) {
    const double vol = volume(m, omega);
    if (vol > 0.0) {
      const double scale = 1.0 / std::cbrt(vol);
      for (auto& v : m) v *= scale;
      diag.residual = stationarity_residual(g, m, a1, a2, omega, tight);
    }
  }

  res.m0 = m;
  const auto d = distance(g, m, a1, a2);
  res.h = d.length;
  res.lambda = res.h * res.h * res.h;
  for (const auto& p : paths) {
    double len = 0.0;
    for (auto v : p.vertices) len += m[v];
    if (len <= res.h * (1.0 + tight)) res.active_paths.push_back(p);
  }
  std::sort(res.active_paths.begin(), res.active_paths.end());
  return res;
}

double stationarity_residual(const Graph& g, std::span<const double> m, const VertexSet& a1,
                             const VertexSet& a2, std::span<const double> omega,
                             double tight_tol) {
  check_metric(g.vertex_count(), m, omega);
  check_terminals(g, a1, a2);
  const double vol = volume(m, omega);
  if (!(vol > 0.0)) throw DomainError("stationarity residual of a zero-volume metric");
  const Metric mn = scaled(m, 1.0 / std::cbrt(vol));
  const auto n = g.vertex_count();
  auto w = [&](VertexId v) { return omega.empty() ? 1.0 : omega[v]; };

  const double h0 = distance(g, mn, a1, a2).length;
  if (!(h0 > 0.0)) return kInfinity;
  const auto dag = shortest_path_dag(g, mn, a1, a2, tight_tol * h0);
  const double h = dag.length;

  // d(lhat)/lhat along a direction = 3 l'/l - vol'/vol, with vol = 1 here.
  double worst = 0.0;
  std::vector<bool> removed(n, false);
  for (VertexId v = 0; v < n; ++v) {
    removed[v] = true;
    const bool hits = dag.member[v] && !dag.surviving_path(removed);
    removed[v] = false;
    const double dvol = 3.0 * w(v) * mn[v] * mn[v];
    worst = std::max(worst, 3.0 * (hits ? 1.0 : 0.0) / h - dvol);
    if (mn[v] > 0.0) worst = std::max(worst, -3.0 * (dag.member[v] ? 1.0 : 0.0) / h + dvol);
  }

  // Indicator of one shortest path through each DAG vertex.
  const auto from = shortest_path_tree(g, mn, a1);
  const auto to = shortest_path_tree(g, mn, a2);
  std::set<PathSeq> directions;
  for (VertexId v = 0; v < n; ++v) {
    if (!dag.member[v]) continue;
    PathSeq beta = from.path_to(v);
    auto tail = to.path_to(v);
    for (auto it = tail.vertices.rbegin() + 1; it != tail.vertices.rend(); ++it) {
      beta.vertices.push_back(*it);
    }
    directions.insert(std::move(beta));
  }
  std::vector<int> cost(n, 0);
  for (const auto& beta : directions) {
    for (auto v : beta.vertices) cost[v] = 1;
    // l' = min over shortest paths alpha of |alpha ∩ beta|: 0-1 BFS on the DAG.
    std::vector<int> best(n, std::numeric_limits<int>::max());
    std::deque<VertexId> queue;
    for (auto s : dag.sources) {
      if (cost[s] < best[s]) {
        best[s] = cost[s];
        if (cost[s] == 0) {
          queue.push_front(s);
        } else {
          queue.push_back(s);
        }
      }
    }
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto x : dag.successors[u]) {
        const int nd = best[u] + cost[x];
        if (nd < best[x]) {
          best[x] = nd;
          if (cost[x] == 0) {
            queue.push_front(x);
          } else {
            queue.push_back(x);
          }
        }
      }
    }
    int dl = std::numeric_limits<int>::max();
    for (auto s : dag.sinks) dl = std::min(dl, best[s]);
    double dvol = 0.0;
    for (auto v : beta.vertices) dvol += 3.0 * w(v) * mn[v] * mn[v];
    worst = std::max(worst, 3.0 * dl / h - dvol);
    for (auto v : beta.vertices) cost[v] = 0;
  }
  return worst;
}

}  // namespace cubetile
