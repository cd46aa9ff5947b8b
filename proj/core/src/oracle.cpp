#include <algorithm>
#include <cmath>

#include "cubetile/solver.hpp"

namespace cubetile {

namespace {

struct MinimalPathEnumerator {
  const Graph& g;
  std::vector<bool> in_a1;
  std::vector<bool> in_a2;
  std::size_t cap;
  std::vector<int> touching;  // path vertices adjacent to each vertex
  std::vector<bool> on_path;
  std::vector<VertexId> path;
  std::vector<PathSeq> out;

  void push(VertexId v) {
    path.push_back(v);
    on_path[v] = true;
    for (auto u : g.neighbors(v)) ++touching[u];
  }

  void pop() {
    const auto v = path.back();
    for (auto u : g.neighbors(v)) --touching[u];
    on_path[v] = false;
    path.pop_back();
  }

  void extend() {
    const auto end = path.back();
    for (auto u : g.neighbors(end)) {
      if (on_path[u] || in_a1[u] || touching[u] != 1) continue;
      if (in_a2[u]) {
        if (out.size() == cap) {
          throw CapExceededError("more than " + std::to_string(cap) + " minimal paths");
        }
        PathSeq p{path};
        p.vertices.push_back(u);
        out.push_back(std::move(p));
        continue;
      }
      push(u);
      extend();
      pop();
    }
  }
};

}  // namespace

std::vector<PathSeq> minimal_paths(const Graph& g, const VertexSet& a1, const VertexSet& a2,
                                   std::size_t cap) {
  const auto n = g.vertex_count();
  if (a1.empty() || a2.empty()) throw DomainError("terminal vertex sets must be nonempty");
  MinimalPathEnumerator e{g, std::vector<bool>(n, false), std::vector<bool>(n, false), cap,
                          std::vector<int>(n, 0), std::vector<bool>(n, false), {}, {}};
  for (auto v : a1) e.in_a1.at(v) = true;
  for (auto v : a2) {
    if (e.in_a1.at(v)) throw DomainError("terminal sets intersect");
    e.in_a2[v] = true;
  }
  for (auto a : a1) {
    e.push(a);
    e.extend();
    e.pop();
  }
  return std::move(e.out);
}

namespace {

// Augmented Lagrangian for  min sum w x^3  s.t.  A x >= 1, x >= 0, with the
// bound handled by projection inside an accelerated gradient method.
class AugmentedLagrangian {
 public:
  AugmentedLagrangian(const std::vector<PathSeq>& rows, std::vector<double> w)
      : rows_(rows), w_(std::move(w)) {}

  std::vector<double> solve(const OracleOptions& opts) {
    const auto n = w_.size();
    const auto k = rows_.size();
    std::vector<double> x(n, 0.0);
    std::size_t longest = 1;
    for (const auto& r : rows_) longest = std::max(longest, r.size());
    for (const auto& r : rows_) {
      for (auto v : r.vertices) x[v] = 1.0 / static_cast<double>(longest);
    }
    mu_.assign(k, 0.0);
    rho_ = 10.0;
    double last_violation = kInfinity;
    double eps = 1e-3;
    for (std::size_t outer = 0; outer < opts.max_outer_iterations; ++outer) {
      eps = std::max(0.1 * opts.residual, 0.1 * eps);
      minimize(x, eps, opts.max_inner_iterations);
      double violation = 0.0;
      double complementarity = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        const double r = 1.0 - row(j, x);
        violation = std::max(violation, r);
        mu_[j] = std::max(0.0, mu_[j] + rho_ * r);
        complementarity = std::max(complementarity, mu_[j] * std::abs(r));
      }
      if (violation <= opts.residual && complementarity <= opts.residual &&
          lagrangian_residual(x) <= opts.residual) {
        break;
      }
      // A moderate penalty keeps the inner gradients accurate to ~1e-13.
      if (violation > 0.25 * last_violation) rho_ = std::min(rho_ * 5.0, 1e3);
      last_violation = violation;
    }
    return x;
  }

 private:
  double row(std::size_t j, const std::vector<double>& x) const {
    double a = 0.0;
    for (auto v : rows_[j].vertices) a += x[v];
    return a;
  }

  void gradient(const std::vector<double>& x, std::vector<double>& g) const {
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = 3.0 * w_[i] * x[i] * x[i];
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      const double r = std::max(0.0, 1.0 + mu_[j] / rho_ - row(j, x));
      if (r == 0.0) continue;
      for (auto v : rows_[j].vertices) g[v] -= rho_ * r;
    }
  }

  static double projected_gradient_norm(const std::vector<double>& x,
                                        const std::vector<double>& g) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      worst = std::max(worst, std::abs(x[i] - std::max(0.0, x[i] - g[i])));
    }
    return worst;
  }

  double lagrangian_residual(const std::vector<double>& x) const {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = 3.0 * w_[i] * x[i] * x[i];
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      for (auto v : rows_[j].vertices) g[v] -= mu_[j];
    }
    return projected_gradient_norm(x, g);
  }

  // FISTA on the orthant. Step sizes come from a local Lipschitz test on
  // gradients and momentum restarts from the gradient criterion; neither
  // compares function values, which stop resolving progress near 1e-8.
  std::size_t minimize(std::vector<double>& x, double eps, std::size_t max_iter) {
    const auto n = x.size();
    std::vector<double> y = x, z(n), gy(n), gz(n);
    double theta = 1.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
      gradient(y, gy);
      for (;;) {
        double dd = 0.0;
        double gg = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          z[i] = std::max(0.0, y[i] - gy[i] / lip_);
          dd += (z[i] - y[i]) * (z[i] - y[i]);
        }
        gradient(z, gz);
        for (std::size_t i = 0; i < n; ++i) gg += (gz[i] - gy[i]) * (gz[i] - gy[i]);
        if (gg <= lip_ * lip_ * dd || lip_ > 1e20) break;
        lip_ *= 2.0;
      }
      if (projected_gradient_norm(z, gz) <= eps) {
        x = z;
        return it;
      }
      double restart = 0.0;
      for (std::size_t i = 0; i < n; ++i) restart += (y[i] - z[i]) * (z[i] - x[i]);
      if (restart > 0.0) theta = 1.0;
      const double next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
      const double beta = (theta - 1.0) / next;
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::max(0.0, z[i] + beta * (z[i] - x[i]));
        x[i] = z[i];
      }
      theta = next;
      lip_ *= 0.9;
    }
    return max_iter;
  }

  const std::vector<PathSeq>& rows_;
  std::vector<double> w_;
  std::vector<double> mu_;
  double rho_ = 10.0;
  double lip_ = 1.0;
};

}  // namespace

Metric brute_force_extremal(const Graph& g, const VertexSet& a1, const VertexSet& a2,
                            std::span<const double> omega, const OracleOptions& opts) {
  const auto n = g.vertex_count();
  if (!omega.empty()) check_metric(n, Metric(n, 0.0), omega);
  const auto paths = minimal_paths(g, a1, a2, opts.path_cap);
  if (paths.empty()) throw DomainError("no path joins the terminal sets");
  std::vector<double> w(n, 1.0);
  if (!omega.empty()) w.assign(omega.begin(), omega.end());
  AugmentedLagrangian al(paths, w);
  Metric m = al.solve(opts);
  const double vol = volume(m, omega);
  return scaled(m, 1.0 / std::cbrt(vol));
}

}  // namespace cubetile
