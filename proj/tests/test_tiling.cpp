#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cubetile/fixtures.hpp"
#include "cubetile/tiling.hpp"
#include "support.hpp"

namespace cubetile {
namespace {

using testing::base;
using testing::small_fixtures;
using testing::solved;
using testing::top;

std::size_t count_lines(const std::string& text, std::string_view prefix) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0 ? 1 : 0;
  return n;
}

TEST(Tiling, Cube6Octants) {
  const auto t = fixtures::cube6();
  const auto tiling = build_tiling(t, solved(small_fixtures()[0]));
  EXPECT_NEAR(tiling.h, 1.0, 1e-6);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(tiling.container[i], 1.0, 1e-6);
  ASSERT_EQ(tiling.boxes.size(), 8u);
  for (VertexId v = 0; v < 8; ++v) {
    const auto& b = tiling.boxes[v];
    const double corner[3] = {0.5 * (v & 1), 0.5 * ((v >> 1) & 1), 0.5 * ((v >> 2) & 1)};
    for (int a = 0; a < 3; ++a) {
      EXPECT_NEAR(b.lo[a], corner[a], 1e-6) << v;
      EXPECT_NEAR(b.extent[a], 0.5, 1e-6) << v;
    }
  }
  // Corner on B2bar, B3 and B1: its distances to those patches are all 0.5.
  EXPECT_NEAR(tiling.boxes[0].hi(0), 0.5, 1e-6);
  EXPECT_NEAR(tiling.boxes[0].hi(1), 0.5, 1e-6);
  EXPECT_NEAR(tiling.boxes[0].hi(2), 0.5, 1e-6);
}

TEST(Tiling, Invariants) {
  for (const auto& f : small_fixtures()) {
    const Graph g = skeleton(f.mesh);
    const auto& res = solved(f);
    const auto tiling = build_tiling(f.mesh, res);
    double total = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const auto& b = tiling.boxes[v];
      for (int a = 0; a < 3; ++a) EXPECT_EQ(b.extent[a], res.m0[v]) << f.name;
      total += b.volume();
    }
    EXPECT_NEAR(total, 1.0, 1e-8) << f.name;

    // Anchoring: some box touches each of the three base planes.
    const BoundaryLabel anchors[3] = {BoundaryLabel::B2bar, BoundaryLabel::B3, BoundaryLabel::B1};
    for (int a = 0; a < 3; ++a) {
      double least = kInfinity;
      for (auto v : g.boundary(anchors[a])) least = std::min(least, tiling.boxes[v].lo[a]);
      EXPECT_NEAR(least, 0.0, 1e-12) << f.name << " axis " << a;
    }

    // Coordinates are test-side Bellman-Ford distances.
    const auto z = testing::bellman_ford(g, res.m0, base(g));
    const auto x = testing::bellman_ford(g, res.m0, g.boundary(BoundaryLabel::B2bar));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      EXPECT_NEAR(tiling.boxes[v].hi(2), z[v], 1e-12);
      EXPECT_NEAR(tiling.boxes[v].hi(0), x[v], 1e-12);
    }

    // Monotone contact bound: lo(v) <= hi(u) along every edge and axis.
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      for (auto v : g.neighbors(u)) {
        for (int a = 0; a < 3; ++a) {
          EXPECT_LE(tiling.boxes[v].lo[a], tiling.boxes[u].hi(a) + 1e-12) << f.name;
        }
      }
    }
  }
}

TEST(Tiling, UnitWeightsReproduceUnweighted) {
  for (const auto& f : small_fixtures()) {
    const std::vector<double> ones(f.mesh.vertex_count, 1.0);
    const auto& res = solved(f);
    auto weighted = build_tiling(f.mesh, res, ones);
    EXPECT_EQ(weighted.weights, ones);
    weighted.weights.clear();
    EXPECT_EQ(weighted, build_tiling(f.mesh, res)) << f.name;
  }
}

TEST(Tiling, WeightedBoxesUseRootWeight) {
  std::mt19937_64 rng(47);
  const auto t = fixtures::cube6();
  const Graph g = skeleton(t);
  const auto omega = testing::random_metric(8, rng, 0.5, 2.0);
  const auto res = solve_extremal(g, base(g), top(g), omega);
  const auto tiling = build_tiling(t, res, omega);
  double total = 0.0;
  for (VertexId v = 0; v < 8; ++v) {
    const auto& b = tiling.boxes[v];
    EXPECT_DOUBLE_EQ(b.extent[0], std::sqrt(omega[v]) * res.m0[v]);
    EXPECT_DOUBLE_EQ(b.extent[2], res.m0[v]);
    total += b.volume();
  }
  EXPECT_NEAR(total, 1.0, 1e-8);
}

TEST(Tiling, Errors) {
  const auto t = fixtures::cube6();
  auto res = solved(small_fixtures()[0]);
  auto big = res;
  for (auto& x : big.m0) x *= 2;
  EXPECT_THROW(build_tiling(t, big), DomainError);
  res.m0.pop_back();
  EXPECT_THROW(build_tiling(t, res), MismatchError);
}

TEST(Tiling, DocumentRoundTrip) {
  for (const auto& f : small_fixtures()) {
    const auto tiling = build_tiling(f.mesh, solved(f));
    const auto text = save_tiling(tiling);
    EXPECT_EQ(load_tiling(text), tiling) << f.name;
    EXPECT_EQ(save_tiling(load_tiling(text)), text);
  }
  std::vector<double> w(8, 2.0);
  const auto t = fixtures::cube6();
  const Graph g = skeleton(t);
  const auto weighted = build_tiling(t, solve_extremal(g, base(g), top(g), w), w);
  EXPECT_EQ(load_tiling(save_tiling(weighted)), weighted);
}

TEST(Tiling, DocumentKeys) {
  const auto text = save_tiling(build_tiling(fixtures::cube6(), solved(small_fixtures()[0])));
  for (const char* key : {"\"h\"", "\"container\"", "\"axis_convention\"", "\"boxes\"",
                          "\"x=0\": \"B2bar\"", "\"z=max\": \"B1bar\"", "\"7\""}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  EXPECT_THROW(load_tiling("{\"h\": 1}"), ParseError);
  EXPECT_THROW(load_tiling("not json"), ParseError);
}

TEST(Tiling, ObjExport) {
  auto tiling = build_tiling(fixtures::cube6(), solved(small_fixtures()[0]));
  auto obj = export_tiling_obj(tiling);
  EXPECT_EQ(count_lines(obj, "v "), 64u);
  EXPECT_EQ(count_lines(obj, "f "), 48u);
  EXPECT_EQ(count_lines(obj, "o "), 8u);

  tiling.boxes[3].extent = {0.0, 0.0, 0.0};
  obj = export_tiling_obj(tiling);
  EXPECT_EQ(count_lines(obj, "v "), 56u);
  EXPECT_EQ(count_lines(obj, "f "), 42u);
  EXPECT_NE(obj.find("degenerate skipped 1"), std::string::npos);
  EXPECT_EQ(obj.find("o box3"), std::string::npos);
}

TEST(Tiling, ObjFacesReferenceBoxCorners) {
  const auto tiling = build_tiling(fixtures::cube6(), solved(small_fixtures()[0]));
  std::istringstream in(export_tiling_obj(tiling));
  std::size_t vertices = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("v ", 0) == 0) ++vertices;
    if (line.rfind("f ", 0) == 0) {
      std::istringstream f(line.substr(2));
      std::size_t a = 0;
      std::size_t lowest = kNoVertex;
      std::size_t highest = 0;
      while (f >> a) {
        lowest = std::min(lowest, a);
        highest = std::max(highest, a);
      }
      EXPECT_LE(highest, vertices);
      EXPECT_LE(highest - lowest, 7u);
    }
  }
}

}  // namespace
}  // namespace cubetile
