#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubetile/mesh.hpp"
#include "cubetile/metric.hpp"
#include "cubetile/solver.hpp"

namespace cubetile {

/// Closed axis-aligned box [lo, lo + extent].
struct Box {
  std::array<double, 3> lo{};
  std::array<double, 3> extent{};

  double hi(int axis) const { return lo[axis] + extent[axis]; }
  double volume() const { return extent[0] * extent[1] * extent[2]; }
  bool degenerate() const { return extent[0] == 0.0 || extent[1] == 0.0 || extent[2] == 0.0; }

  friend bool operator==(const Box&, const Box&) = default;
};

/// Which boundary patch touches each face plane of the container, in the
/// order x = 0, x = max, y = 0, y = max, z = 0, z = max. Coordinates are
/// distances measured from the low-plane patch.
using AxisConvention = std::array<BoundaryLabel, 6>;

inline constexpr AxisConvention kAxisConvention = {
    BoundaryLabel::B2bar, BoundaryLabel::B2, BoundaryLabel::B3,
    BoundaryLabel::B3bar, BoundaryLabel::B1, BoundaryLabel::B1bar};

struct CubeTiling {
  double h = 0.0;
  /// Extents of R = [0, 1/sqrt(h)]^2 x [0, h].
  std::array<double, 3> container{};
  AxisConvention axes = kAxisConvention;
  std::vector<Box> boxes;  ///< indexed by vertex id
  /// Weights the tiling was built with; empty when unweighted.
  std::vector<double> weights;

  friend bool operator==(const CubeTiling&, const CubeTiling&) = default;
};

/// Tiling induced by the extremal metric:
///   z(v) = m-distance from B1 to v,
///   x(v) = distance from B2bar, y(v) = distance from B3, both with vertex
///   cost sqrt(omega) m (plain m when unweighted),
///   C_v = [x - sqrt(omega) m, x] x [y - sqrt(omega) m, y] x [z - m, z].
/// Throws MismatchError if res does not fit the mesh and DomainError if m0 is
/// not volume-normalized (1e-6).
CubeTiling build_tiling(const Triangulation& t, const ExtremalResult& res,
                        std::span<const double> omega = {});

/// Structured document: h, container, axis_convention, boxes keyed by vertex.
std::string save_tiling(const CubeTiling& tiling);
CubeTiling load_tiling(std::string_view text);

/// Wavefront OBJ with 8 corners and 6 quads per nondegenerate box; the
/// header comment records how many degenerate boxes were skipped.
std::string export_tiling_obj(const CubeTiling& tiling);

}  // namespace cubetile
