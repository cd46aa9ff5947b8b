#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cubetile/metric.hpp"
#include "cubetile/solver.hpp"

namespace cubetile {

/// All shortest A1-A2 paths, encoded as the digraph of tight edges.
/// Vertex v is a member iff d_from[v] + d_to[v] - m[v] <= length + tol; edge
/// u->v is kept iff both are members and d_from[u] + d_to[v] <= length + tol.
/// Zero-weight vertices can make ties in both directions; both edges are then
/// kept, so the digraph is acyclic only for positive metrics. Source-to-sink
/// walks are exactly the shortest paths (simple ones, after removing
/// zero-length detours).
struct ShortestPathDag {
  double length = 0.0;
  double tol = 0.0;
  std::vector<double> d_from;
  std::vector<double> d_to;
  std::vector<bool> member;
  std::vector<std::vector<VertexId>> successors;
  VertexSet sources;  ///< members of A1 with d_from == m
  VertexSet sinks;    ///< members of A2 with d_to == m

  std::size_t vertex_count() const { return member.size(); }
  std::size_t member_count() const;
  std::size_t edge_count() const;

  /// A source-to-sink path avoiding every vertex with removed[v] set, or
  /// nothing. BFS order, so the answer is deterministic.
  std::optional<PathSeq> surviving_path(const std::vector<bool>& removed) const;
};

ShortestPathDag shortest_path_dag(const Graph& g, std::span<const double> m, const VertexSet& a1,
                                  const VertexSet& a2, double tol = 1e-9);

/// True iff deleting gamma's vertices leaves no shortest A1-A2 path.
bool hits_all_shortest(const Graph& g, std::span<const double> m, const PathSeq& gamma,
                       const VertexSet& a1, const VertexSet& a2, double tol = 1e-9);

enum class TripleVerdict { holds, fails, unknown };

std::string_view to_string(TripleVerdict v);

/// Every candidate extending `prefix` misses the shortest B1-B1bar path `avoided`.
struct Refutation {
  PathSeq prefix;
  PathSeq avoided;
};

struct SideSearch {
  TripleVerdict verdict = TripleVerdict::unknown;
  /// On holds: a shortest path of this side meeting every shortest B1-B1bar path.
  std::optional<PathSeq> certificate;
  /// On fails: one refutation per pruned subtree; together they cover every candidate.
  std::vector<Refutation> refutations;
  /// A shortest B1-B1bar path disjoint from every candidate, when one exists.
  std::optional<PathSeq> common_witness;
  std::size_t expansions = 0;
  std::size_t candidates = 0;
};

struct TripleOptions {
  std::size_t budget = 1'000'000;
  double tol = 1e-7;
};

struct TripleDecision {
  TripleVerdict verdict = TripleVerdict::unknown;
  std::optional<PathSeq> gamma;  ///< shortest B2-B2bar path
  std::optional<PathSeq> delta;  ///< shortest B3-B3bar path
  SideSearch side2;
  SideSearch side3;
};

/// Search one side: candidates are the simple source-to-sink paths of the
/// (from, opposite(from)) DAG, explored depth first. A prefix is cut off as
/// soon as the B1 DAG minus (prefix + everything reachable from its end)
/// still has a path, which then refutes the whole subtree.
SideSearch search_side(const Graph& g, std::span<const double> m, BoundaryLabel from,
                       const TripleOptions& opts);

/// holds iff both sides find a hitting path; fails iff a side exhausts its
/// candidates without one; unknown otherwise (budget ran out).
TripleDecision check_triple_intersection(const Triangulation& t, const ExtremalResult& res,
                                         const TripleOptions& opts = {});

struct PerturbationOptions {
  double tol = 1e-7;
  std::size_t samples = 8;
};

struct PerturbationCheck {
  double lhs = 0.0;  ///< sum over gamma of omega m0^2
  double rhs = 0.0;  ///< 1 / h
  /// Lower bound on (second shortest - shortest) B1-B1bar length.
  double gap = 0.0;
  bool degenerate = false;  ///< gap <= tol; the sampled-t test is skipped
  /// min over sampled t of l_{m_t} - (h + t); NaN when skipped.
  double worst_margin = 0.0;
  bool length_pass = false;
  bool square_pass = false;
  bool pass = false;
};

/// l_{perturb(m0, gamma, t)} >= h + t for sampled t below the gap, and
/// sum_{gamma} omega m0^2 >= 1/h, both up to tol.
PerturbationCheck check_perturbation_inequality(const Graph& g, const ExtremalResult& res,
                                                const PathSeq& gamma,
                                                std::span<const double> omega = {},
                                                const PerturbationOptions& opts = {});

}  // namespace cubetile
