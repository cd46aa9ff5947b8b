#pragma once

#include <cstdint>

#include "cubetile/mesh.hpp"

namespace cubetile::fixtures {

/// Unit cube cut into 6 tetrahedra around the main diagonal 0-7; vertex id =
/// x + 2y + 4z. B1: z=0, B1bar: z=1, B2bar: x=0, B2: x=1, B3: y=0, B3bar: y=1.
Triangulation cube6();

/// Two square pyramids glued at their apex p = 4: base 0..3 (B1), top 5..8
/// (B1bar). Every B1-B1bar path passes through p, and p lies on all four
/// side patches. Not a manifold ball: validate() rejects it.
Triangulation hourglass();

/// nx*ny*nz grid of unit cubes, each cut into 6 tetrahedra by pulling
/// vertices in a global order: lexicographic when seed == 0, otherwise a
/// random permutation. Faces labeled as in cube6.
Triangulation kuhn_grid(int nx, int ny, int nz, std::uint64_t seed = 0);

/// Splits `count` randomly chosen edges at their midpoints; every
/// tetrahedron and boundary triangle on a split edge is halved.
Triangulation bisect_edges(const Triangulation& t, int count, std::uint64_t seed);

}  // namespace cubetile::fixtures
