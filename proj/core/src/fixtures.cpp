#include "cubetile/fixtures.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace cubetile::fixtures {

Triangulation kuhn_grid(int nx, int ny, int nz, std::uint64_t seed) {
  if (nx < 1 || ny < 1 || nz < 1) throw DomainError("grid dimensions must be positive");
  const int px = nx + 1;
  const int py = ny + 1;
  const int pz = nz + 1;
  auto id = [&](int x, int y, int z) { return static_cast<VertexId>(x + px * (y + py * z)); };

  Triangulation t;
  t.vertex_count = static_cast<std::size_t>(px * py * pz);
  std::vector<std::array<double, 3>> coords(t.vertex_count);
  for (int z = 0; z < pz; ++z) {
    for (int y = 0; y < py; ++y) {
      for (int x = 0; x < px; ++x) coords[id(x, y, z)] = {double(x), double(y), double(z)};
    }
  }
  t.coords = coords;

  std::vector<std::size_t> rank(t.vertex_count);
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(rank.begin(), rank.end(), rng);
  }
  auto earliest = [&](const std::vector<VertexId>& vs) {
    return *std::min_element(vs.begin(), vs.end(),
                             [&](VertexId a, VertexId b) { return rank[a] < rank[b]; });
  };

  for (int z = 0; z < nz; ++z) {
    for (int y = 0; y < ny; ++y) {
      for (int x = 0; x < nx; ++x) {
        std::vector<VertexId> corners;
        for (int c = 0; c < 8; ++c) corners.push_back(id(x + (c & 1), y + ((c >> 1) & 1), z + (c >> 2)));
        const VertexId apex = earliest(corners);
        const int ax = int(coords[apex][0]) - x;
        const int ay = int(coords[apex][1]) - y;
        const int az = int(coords[apex][2]) - z;
        // The three cube faces not containing the apex, each split along the
        // diagonal through its earliest vertex, coned to the apex.
        for (int axis = 0; axis < 3; ++axis) {
          const int side = 1 - (axis == 0 ? ax : axis == 1 ? ay : az);
          std::vector<VertexId> face;
          for (auto v : corners) {
            if (int(coords[v][axis]) - (axis == 0 ? x : axis == 1 ? y : z) == side) face.push_back(v);
          }
          const VertexId a = earliest(face);
          VertexId opp = a;
          std::vector<VertexId> others;
          for (auto v : face) {
            if (v == a) continue;
            int diff = 0;
            for (int k = 0; k < 3; ++k) diff += coords[v][k] != coords[a][k];
            if (diff == 2) {
              opp = v;
            } else {
              others.push_back(v);
            }
          }
          for (auto o : others) {
            Tet tet{apex, a, o, opp};
            std::sort(tet.begin(), tet.end());
            t.tetrahedra.push_back(tet);
          }
        }
      }
    }
  }
  std::sort(t.tetrahedra.begin(), t.tetrahedra.end());

  std::map<Tri, int> count;
  for (const auto& k : t.tetrahedra) {
    for (int skip = 0; skip < 4; ++skip) {
      std::vector<VertexId> f;
      for (int i = 0; i < 4; ++i) {
        if (i != skip) f.push_back(k[i]);
      }
      ++count[make_tri(f[0], f[1], f[2])];
    }
  }
  const std::array<int, 3> extent{nx, ny, nz};
  for (const auto& [f, c] : count) {
    if (c != 1) continue;
    for (int axis = 0; axis < 3; ++axis) {
      const double v0 = coords[f[0]][axis];
      if (coords[f[1]][axis] != v0 || coords[f[2]][axis] != v0) continue;
      const bool high = v0 == double(extent[axis]);
      BoundaryLabel l{};
      switch (axis) {
        case 0:
          l = high ? BoundaryLabel::B2 : BoundaryLabel::B2bar;
          break;
        case 1:
          l = high ? BoundaryLabel::B3bar : BoundaryLabel::B3;
          break;
        default:
          l = high ? BoundaryLabel::B1bar : BoundaryLabel::B1;
          break;
      }
      t.boundary.push_back({f, l});
    }
  }
  return t;
}

Triangulation cube6() { return kuhn_grid(1, 1, 1); }

Triangulation hourglass() {
  Triangulation t;
  t.vertex_count = 9;
  t.tetrahedra = {{0, 1, 2, 4}, {0, 2, 3, 4}, {4, 5, 6, 7}, {4, 5, 7, 8}};
  using L = BoundaryLabel;
  t.boundary = {
      {make_tri(0, 1, 2), L::B1},    {make_tri(0, 2, 3), L::B1},
      {make_tri(5, 6, 7), L::B1bar}, {make_tri(5, 7, 8), L::B1bar},
      {make_tri(0, 1, 4), L::B2},    {make_tri(1, 2, 4), L::B3},
      {make_tri(2, 3, 4), L::B2bar}, {make_tri(0, 3, 4), L::B3bar},
      {make_tri(4, 5, 6), L::B2},    {make_tri(4, 6, 7), L::B3},
      {make_tri(4, 7, 8), L::B2bar}, {make_tri(4, 5, 8), L::B3bar},
  };
  t.coords = std::vector<std::array<double, 3>>{
      {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0.5, 0.5, 1},
      {0, 0, 2}, {1, 0, 2}, {1, 1, 2}, {0, 1, 2}};
  return t;
}

Triangulation bisect_edges(const Triangulation& input, int count, std::uint64_t seed) {
  Triangulation t = input;
  std::mt19937_64 rng(seed);
  for (int step = 0; step < count; ++step) {
    std::set<std::pair<VertexId, VertexId>> edges;
    for (const auto& k : t.tetrahedra) {
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) edges.emplace(std::min(k[i], k[j]), std::max(k[i], k[j]));
      }
    }
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    const auto [u, v] = *std::next(edges.begin(), static_cast<std::ptrdiff_t>(pick(rng)));
    const auto w = static_cast<VertexId>(t.vertex_count++);

    std::vector<Tet> tets;
    for (const auto& k : t.tetrahedra) {
      const bool has_u = std::find(k.begin(), k.end(), u) != k.end();
      const bool has_v = std::find(k.begin(), k.end(), v) != k.end();
      if (!(has_u && has_v)) {
        tets.push_back(k);
        continue;
      }
      for (auto drop : {u, v}) {
        Tet half = k;
        std::replace(half.begin(), half.end(), drop, w);
        std::sort(half.begin(), half.end());
        tets.push_back(half);
      }
    }
    t.tetrahedra = std::move(tets);

    std::vector<BoundaryTriangle> tris;
    for (const auto& b : t.boundary) {
      const auto& f = b.tri;
      const bool has_u = std::find(f.begin(), f.end(), u) != f.end();
      const bool has_v = std::find(f.begin(), f.end(), v) != f.end();
      if (!(has_u && has_v)) {
        tris.push_back(b);
        continue;
      }
      for (auto drop : {u, v}) {
        Tri half = f;
        std::replace(half.begin(), half.end(), drop, w);
        tris.push_back({make_tri(half[0], half[1], half[2]), b.label});
      }
    }
    t.boundary = std::move(tris);

    if (t.coords) {
      const auto& a = (*t.coords)[u];
      const auto& b = (*t.coords)[v];
      t.coords->push_back({(a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2});
    }
    if (t.weights) t.weights->push_back(((*t.weights)[u] + (*t.weights)[v]) / 2);
  }
  std::sort(t.tetrahedra.begin(), t.tetrahedra.end());
  return t;
}

}  // namespace cubetile::fixtures
