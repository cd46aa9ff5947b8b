#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubetile/types.hpp"

namespace cubetile {

/// The six boundary patches of a topological cube. B1/B1bar are base and
/// top, B2/B2bar front and back, B3/B3bar left and right.
enum class BoundaryLabel : std::uint8_t { B1 = 0, B1bar, B2, B2bar, B3, B3bar };

inline constexpr std::array<BoundaryLabel, 6> kAllLabels = {
    BoundaryLabel::B1, BoundaryLabel::B1bar, BoundaryLabel::B2,
    BoundaryLabel::B2bar, BoundaryLabel::B3, BoundaryLabel::B3bar};

constexpr BoundaryLabel opposite(BoundaryLabel l) {
  const auto i = static_cast<std::uint8_t>(l);
  return static_cast<BoundaryLabel>(i ^ 1u);
}

constexpr std::size_t index_of(BoundaryLabel l) { return static_cast<std::size_t>(l); }

std::string_view to_string(BoundaryLabel l);

/// Throws LabelError for anything other than the six canonical names.
BoundaryLabel parse_label(std::string_view s);

using Tet = std::array<VertexId, 4>;
/// Triangle with vertices in ascending order.
using Tri = std::array<VertexId, 3>;

Tri make_tri(VertexId a, VertexId b, VertexId c);

struct BoundaryTriangle {
  Tri tri;
  BoundaryLabel label;
};

struct Triangulation {
  std::size_t vertex_count = 0;
  std::vector<Tet> tetrahedra;
  std::vector<BoundaryTriangle> boundary;
  /// Optional per-vertex weights (the omega of the weighted mode).
  std::optional<std::vector<double>> weights;
  /// Optional coordinates, only used for OBJ export of the input mesh.
  std::optional<std::vector<std::array<double, 3>>> coords;
};

/// Parse the JSON mesh document:
///   {"vertices": N, "tetrahedra": [[a,b,c,d],...],
///    "boundary": [{"tri": [i,j,k], "label": "B1"}, ...],
///    "weights": [...]?, "coords": [[x,y,z],...]?}
/// Throws ParseError, ReferenceError or LabelError.
Triangulation load_triangulation(std::string_view text);
Triangulation load_triangulation_file(const std::string& path);

/// Canonical serialization; load_triangulation(save_triangulation(t)) == t.
std::string save_triangulation(const Triangulation& t);

bool operator==(const BoundaryTriangle& a, const BoundaryTriangle& b);
bool operator==(const Triangulation& a, const Triangulation& b);

struct ValidationCheck {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  const ValidationCheck* find(std::string_view name) const;
};

// Names of the checks performed by validate(), in report order.
inline constexpr std::string_view kCheckTetVertices = "tetrahedra_distinct_vertices";
inline constexpr std::string_view kCheckReferences = "vertex_references";
inline constexpr std::string_view kCheckFaceManifold = "faces_shared_by_at_most_two";
inline constexpr std::string_view kCheckBoundaryLabeled = "boundary_triangles_labeled";
inline constexpr std::string_view kCheckBoundarySphere = "boundary_is_sphere";
inline constexpr std::string_view kCheckConnected = "complex_connected";
inline constexpr std::string_view kCheckEdgeLinks = "edge_links";
inline constexpr std::string_view kCheckLabelsNonempty = "labels_nonempty";
inline constexpr std::string_view kCheckLabelsConnected = "labels_edge_connected";
inline constexpr std::string_view kCheckOppositeDisjoint = "opposite_labels_vertex_disjoint";
inline constexpr std::string_view kCheckAdjacentShare = "labels_share_no_triangle";

/// Run every combinatorial check on T. Failures are report entries, never
/// exceptions. Ball-ness is approximated: sphere boundary, connectivity,
/// interior faces in exactly two tetrahedra, edge links are cycles/paths.
ValidationReport validate(const Triangulation& t);

/// 1-skeleton of a triangulation with the six boundary vertex sets.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t vertex_count, std::vector<std::vector<VertexId>> adjacency,
        std::array<VertexSet, 6> boundary_sets);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const;
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
  bool adjacent(VertexId u, VertexId v) const;
  const VertexSet& boundary(BoundaryLabel l) const { return boundary_sets_[index_of(l)]; }
  bool connected() const;

  /// Throws InvalidPathError unless p is a nonempty simple path of G.
  void check_path(const PathSeq& p) const;

 private:
  std::vector<std::vector<VertexId>> adjacency_;
  std::array<VertexSet, 6> boundary_sets_;
};

/// Deduplicated tetrahedron edges plus boundary_sets[L] = vertices incident
/// to a triangle labeled L.
Graph skeleton(const Triangulation& t);

/// Graph built from an explicit edge list; for tests and non-mesh inputs.
Graph graph_from_edges(std::size_t vertex_count,
                       std::span<const std::pair<VertexId, VertexId>> edges,
                       std::array<VertexSet, 6> boundary_sets = {});

enum class SpineOutcome { found, absent, unknown };

struct SpineResult {
  SpineOutcome outcome = SpineOutcome::absent;
  std::optional<PathSeq> path;
  std::size_t explored = 0;
};

/// Diagnostic search for a spine. Interpretation: a spine is a B1-B1bar path
/// whose non-endpoint vertices avoid B1 and B1bar, it is the only such path
/// (compared by interior sequence; paths with empty interior count one by
/// one), and every B2-B2bar or B3-B3bar path lying entirely off B1 and B1bar
/// meets its interior. This is an interpretation of an under-specified
/// definition, not a settled one. `budget` bounds DFS expansions; running out
/// yields `unknown`.
SpineResult detect_spine(const Triangulation& t, std::size_t budget = 1'000'000);

}  // namespace cubetile
