#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cubetile/metric.hpp"

namespace cubetile {

struct SolverOptions {
  /// Target for the separation gap and the stationarity residual.
  double tolerance = 1e-8;
  std::size_t max_outer_iterations = 10'000;
  /// Newton steps allowed per barrier stage.
  std::size_t max_newton_iterations = 100;
  /// Barrier stops once (constraints / t) <= barrier_gap * objective.
  double barrier_gap = 1e-13;
  /// Violated paths added per cutting-plane round (the shortest one first).
  std::size_t paths_per_round = 32;
  /// 0: uniform start. Otherwise the seed path and the barrier start come
  /// from a random positive metric drawn with this seed.
  std::uint64_t seed = 0;
};

struct SolverDiagnostics {
  std::size_t outer_iterations = 0;
  std::size_t newton_iterations = 0;
  std::size_t constraint_count = 0;
  double residual = 0.0;
  bool converged = false;
  /// 1 / (restricted optimum) after each round; never increases.
  std::vector<double> master_objective;
  bool master_monotone = true;
};

struct ExtremalResult {
  Metric m0;        ///< volume 1
  double h = 0.0;   ///< l_{m0}(A1, A2)
  double lambda = 0.0;  ///< h^3
  std::vector<PathSeq> active_paths;
  SolverDiagnostics diagnostics;
};

/// Extremal metric for (g, a1, a2) by cutting planes on
///   minimize sum omega m^3  s.t.  sum_{v in alpha} m(v) >= 1 for all paths,
/// each restricted program solved by a log-barrier Newton method, then
/// rescaled to volume 1. Throws DomainError if a1 and a2 intersect or are
/// empty. A run that hits the iteration cap returns the best iterate with
/// diagnostics.converged == false.
ExtremalResult solve_extremal(const Graph& g, const VertexSet& a1, const VertexSet& a2,
                              std::span<const double> omega = {},
                              const SolverOptions& opts = {});

/// Largest relative one-sided derivative (d lhat / lhat) over the
/// perturbation directions: indicators of shortest paths and +-e_v, clamped
/// at 0. Evaluated at m rescaled to volume 1. Paths count as shortest when
/// within `tight_tol` of the distance.
double stationarity_residual(const Graph& g, std::span<const double> m, const VertexSet& a1,
                             const VertexSet& a2, std::span<const double> omega = {},
                             double tight_tol = 1e-9);

struct OracleOptions {
  std::size_t path_cap = 100'000;
  double residual = 1e-10;
  std::size_t max_outer_iterations = 500;
  std::size_t max_inner_iterations = 200'000;
};

/// Minimal A1-A2 paths: chordless, first vertex the only one in A1, last the
/// only one in A2. Throws CapExceededError past `cap`.
std::vector<PathSeq> minimal_paths(const Graph& g, const VertexSet& a1, const VertexSet& a2,
                                   std::size_t cap = 100'000);

/// Independent oracle: every minimal path becomes a constraint and the full
/// program is solved by an augmented Lagrangian with accelerated projected
/// gradient on the nonnegative orthant. Result normalized to volume 1.
Metric brute_force_extremal(const Graph& g, const VertexSet& a1, const VertexSet& a2,
                            std::span<const double> omega = {}, const OracleOptions& opts = {});

}  // namespace cubetile
