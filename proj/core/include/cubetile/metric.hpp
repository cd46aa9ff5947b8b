#pragma once

#include <limits>
#include <span>
#include <vector>

#include "cubetile/mesh.hpp"
#include "cubetile/types.hpp"

namespace cubetile {

/// Nonnegative value per vertex.
using Metric = std::vector<double>;

/// Per-vertex weights omega. Functions take `std::span<const double> omega`;
/// an empty span means the unweighted case.
using Weights = std::vector<double>;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Throws MismatchError / DomainError unless m has one nonnegative finite
/// entry per vertex and omega is empty or positive of the same size.
void check_metric(std::size_t vertex_count, std::span<const double> m,
                  std::span<const double> omega = {});

/// Sum of m(v) (or omega(v) m(v)) over the path, both endpoints included.
/// Throws InvalidPathError if the path is not a simple path of g.
double path_length(const Graph& g, std::span<const double> m, const PathSeq& alpha,
                   std::span<const double> omega = {});

/// Single-source-set sweep with vertex costs: dist[v] is the least cost of a
/// path from `sources` to v, counting both endpoints. parent[v] is the
/// predecessor on one such path (kNoVertex for sources and unreachable).
/// Ties resolve by vertex id, so the result is deterministic.
struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<VertexId> parent;

  /// Path from the source set to v; empty if v is unreachable.
  PathSeq path_to(VertexId v) const;
};

ShortestPathTree shortest_path_tree(const Graph& g, std::span<const double> cost,
                                    std::span<const VertexId> sources);

struct Distance {
  double length = kInfinity;
  PathSeq path;
};

/// Least m-length (omega m-length when weighted) of a path from A1 to A2 and
/// one path attaining it. Throws DomainError on empty sets or unreachable A2.
Distance distance(const Graph& g, std::span<const double> m, const VertexSet& a1,
                  const VertexSet& a2, std::span<const double> omega = {});

/// Sum m(v)^3 (or omega(v) m(v)^3).
double volume(std::span<const double> m, std::span<const double> omega = {});

/// l^3 / vol with l the plain m-distance and vol the (weighted) volume.
/// Throws DomainError on zero volume.
double normalized_length(const Graph& g, std::span<const double> m, const VertexSet& a1,
                         const VertexSet& a2, std::span<const double> omega = {});

/// m + t on the vertices of alpha. Throws DomainError for t < 0.
Metric perturb(std::span<const double> m, const PathSeq& alpha, double t);

/// Right derivative at t = 0 of volume(perturb(m, alpha, t)):
/// 3 * sum over alpha of omega(v) m(v)^2.
double volume_derivative(std::span<const double> m, const PathSeq& alpha,
                         std::span<const double> omega = {});

/// c * m.
Metric scaled(std::span<const double> m, double c);

}  // namespace cubetile
