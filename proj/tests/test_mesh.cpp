#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "cubetile/fixtures.hpp"
#include "cubetile/mesh.hpp"
#include "support.hpp"

namespace cubetile {
namespace {

using testing::small_fixtures;

const ValidationCheck& check(const ValidationReport& r, std::string_view name) {
  const auto* c = r.find(name);
  EXPECT_NE(c, nullptr) << name;
  return *c;
}

std::set<std::pair<VertexId, VertexId>> tet_edges(const Triangulation& t) {
  std::set<std::pair<VertexId, VertexId>> e;
  for (const auto& k : t.tetrahedra) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (k[i] < k[j]) e.emplace(k[i], k[j]);
      }
    }
  }
  return e;
}

TEST(Load, Cube6Counts) {
  const auto t = load_triangulation(save_triangulation(fixtures::cube6()));
  EXPECT_EQ(t.vertex_count, 8u);
  EXPECT_EQ(t.tetrahedra.size(), 6u);
  EXPECT_EQ(t.boundary.size(), 12u);
}

TEST(Load, RoundTripIsIdentity) {
  for (const auto& f : small_fixtures()) {
    const auto text = save_triangulation(f.mesh);
    const auto back = load_triangulation(text);
    EXPECT_EQ(back, f.mesh) << f.name;
    EXPECT_EQ(save_triangulation(back), text) << f.name;
  }
}

TEST(Load, RoundTripKeepsWeights) {
  auto t = fixtures::cube6();
  t.weights = std::vector<double>{1, 2, 3, 4, 5, 6, 7, 0.1};
  EXPECT_EQ(load_triangulation(save_triangulation(t)), t);
}

TEST(Load, UnknownVertexIsReferenceError) {
  const std::string doc =
      R"({"vertices": 8, "tetrahedra": [[0, 1, 2, 99]], "boundary": []})";
  EXPECT_THROW(load_triangulation(doc), ReferenceError);
}

TEST(Load, UnknownLabelIsLabelError) {
  const std::string doc =
      R"({"vertices": 4, "tetrahedra": [[0, 1, 2, 3]],
          "boundary": [{"tri": [0, 1, 2], "label": "B4"}]})";
  EXPECT_THROW(load_triangulation(doc), LabelError);
}

TEST(Load, MalformedIsParseError) {
  EXPECT_THROW(load_triangulation("{\"vertices\": 8, "), ParseError);
  EXPECT_THROW(load_triangulation(R"({"tetrahedra": []})"), ParseError);
  EXPECT_THROW(load_triangulation(R"({"vertices": -1, "tetrahedra": [], "boundary": []})"),
               ParseError);
}

TEST(Load, LabelsParseBothWays) {
  for (auto l : {BoundaryLabel::B1, BoundaryLabel::B1bar, BoundaryLabel::B2, BoundaryLabel::B2bar,
                 BoundaryLabel::B3, BoundaryLabel::B3bar}) {
    EXPECT_EQ(parse_label(to_string(l)), l);
    EXPECT_EQ(opposite(opposite(l)), l);
    EXPECT_NE(opposite(l), l);
  }
  EXPECT_THROW(parse_label("b1"), LabelError);
}

TEST(Validate, FixturesThatAreCubesPass) {
  for (const auto& f : small_fixtures()) {
    if (f.name == "hourglass") continue;
    const auto r = validate(f.mesh);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << f.name << " " << c.name << " " << c.witness;
  }
  EXPECT_TRUE(validate(fixtures::kuhn_grid(3, 2, 4, 5)).ok());
}

TEST(Validate, RelabeledBottomTriangleBreaksOppositeDisjointness) {
  auto t = fixtures::cube6();
  Tri moved{};
  for (auto& b : t.boundary) {
    if (b.label == BoundaryLabel::B1) {
      b.label = BoundaryLabel::B1bar;
      moved = b.tri;
      break;
    }
  }
  const auto r = validate(t);
  const auto& c = check(r, kCheckOppositeDisjoint);
  EXPECT_FALSE(c.pass);
  const std::string tri = "[" + std::to_string(moved[0]) + "," + std::to_string(moved[1]) + "," +
                          std::to_string(moved[2]) + "]";
  EXPECT_NE(c.witness.find(tri), std::string::npos) << c.witness;
}

TEST(Validate, TwoGluedTetrahedraCannotSeparateOppositeLabels) {
  Triangulation t;
  t.vertex_count = 5;
  t.tetrahedra = {{0, 1, 2, 3}, {0, 1, 2, 4}};
  using L = BoundaryLabel;
  t.boundary = {{make_tri(0, 1, 3), L::B1},   {make_tri(0, 2, 3), L::B1bar},
                {make_tri(1, 2, 3), L::B2},   {make_tri(0, 1, 4), L::B2bar},
                {make_tri(0, 2, 4), L::B3},   {make_tri(1, 2, 4), L::B3bar}};
  const auto r = validate(t);
  EXPECT_FALSE(check(r, kCheckOppositeDisjoint).pass);
  EXPECT_TRUE(check(r, kCheckBoundarySphere).pass);
}

TEST(Validate, UnlabeledBoundaryTriangleIsReported) {
  auto t = fixtures::cube6();
  t.boundary.pop_back();
  EXPECT_FALSE(check(validate(t), kCheckBoundaryLabeled).pass);
}

TEST(Validate, DuplicateVertexInTetrahedron) {
  auto t = fixtures::cube6();
  t.tetrahedra[0][1] = t.tetrahedra[0][0];
  EXPECT_FALSE(check(validate(t), kCheckTetVertices).pass);
}

TEST(Validate, FaceInThreeTetrahedra) {
  auto t = fixtures::cube6();
  // Find an interior face (shared by two tetrahedra) and glue a third onto it.
  std::map<std::array<VertexId, 3>, int> seen;
  std::array<VertexId, 3> shared{};
  for (const auto& k : t.tetrahedra) {
    for (int skip = 0; skip < 4; ++skip) {
      std::array<VertexId, 3> f{};
      for (int i = 0, j = 0; i < 4; ++i) {
        if (i != skip) f[j++] = k[i];
      }
      std::sort(f.begin(), f.end());
      if (++seen[f] == 2) shared = f;
    }
  }
  t.vertex_count += 1;
  t.tetrahedra.push_back({shared[0], shared[1], shared[2], static_cast<VertexId>(t.vertex_count - 1)});
  EXPECT_FALSE(check(validate(t), kCheckFaceManifold).pass);
}

TEST(Validate, HourglassIsNotAManifoldBall) {
  const auto r = validate(fixtures::hourglass());
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(check(r, kCheckOppositeDisjoint).pass);
}

TEST(Validate, ReportsEveryCheckInOrder) {
  const std::string_view expected[] = {
      kCheckTetVertices,     kCheckReferences,       kCheckFaceManifold,     kCheckBoundaryLabeled,
      kCheckBoundarySphere,  kCheckConnected,        kCheckEdgeLinks,        kCheckLabelsNonempty,
      kCheckLabelsConnected, kCheckOppositeDisjoint, kCheckAdjacentShare};
  const auto r = validate(fixtures::cube6());
  ASSERT_EQ(r.checks.size(), std::size(expected));
  for (std::size_t i = 0; i < r.checks.size(); ++i) EXPECT_EQ(r.checks[i].name, expected[i]);
}

TEST(Skeleton, Cube6HasNineteenEdges) {
  const Graph g = skeleton(fixtures::cube6());
  EXPECT_EQ(g.vertex_count(), 8u);
  EXPECT_EQ(g.edge_count(), 19u);
  EXPECT_EQ(g.boundary(BoundaryLabel::B1), (VertexSet{0, 1, 2, 3}));
  EXPECT_EQ(g.boundary(BoundaryLabel::B1bar), (VertexSet{4, 5, 6, 7}));
  EXPECT_TRUE(g.adjacent(0, 7));
}

TEST(Skeleton, SingleTetrahedronIsK4) {
  Triangulation t;
  t.vertex_count = 4;
  t.tetrahedra = {{0, 1, 2, 3}};
  const Graph g = skeleton(t);
  EXPECT_EQ(g.edge_count(), 6u);
  for (VertexId u = 0; u < 4; ++u) {
    for (VertexId v = 0; v < 4; ++v) EXPECT_EQ(g.adjacent(u, v), u != v);
  }
}

TEST(Skeleton, EdgesMatchTetrahedronEdges) {
  for (const auto& f : small_fixtures()) {
    const Graph g = skeleton(f.mesh);
    const auto edges = tet_edges(f.mesh);
    EXPECT_EQ(g.edge_count(), edges.size()) << f.name;
    for (auto [u, v] : edges) EXPECT_TRUE(g.adjacent(u, v)) << f.name;
  }
}

TEST(Skeleton, ConnectedAndBoundarySetsConsistent) {
  for (const auto& f : small_fixtures()) {
    const Graph g = skeleton(f.mesh);
    EXPECT_TRUE(g.connected()) << f.name;
    std::set<VertexId> on_boundary;
    for (const auto& b : f.mesh.boundary) on_boundary.insert(b.tri.begin(), b.tri.end());
    for (auto v : on_boundary) {
      bool found = false;
      for (int l = 0; l < 6; ++l) found = found || testing::in(g.boundary(BoundaryLabel(l)), v);
      EXPECT_TRUE(found) << f.name << " vertex " << v;
    }
    if (f.name == "hourglass") continue;
    for (auto l : {BoundaryLabel::B1, BoundaryLabel::B2, BoundaryLabel::B3}) {
      for (auto v : g.boundary(l)) EXPECT_FALSE(testing::in(g.boundary(opposite(l)), v)) << f.name;
    }
  }
}

TEST(Skeleton, CheckPathRejectsGaps) {
  const Graph g = skeleton(fixtures::cube6());
  EXPECT_NO_THROW(g.check_path(PathSeq{{0, 4}}));
  EXPECT_THROW(g.check_path(PathSeq{{0, 6, 0}}), InvalidPathError);
  EXPECT_THROW(g.check_path(PathSeq{{1, 6}}), InvalidPathError);
  EXPECT_THROW(g.check_path(PathSeq{{0, 42}}), InvalidPathError);
  EXPECT_THROW(g.check_path(PathSeq{}), InvalidPathError);
}

TEST(Spine, Cube6HasNone) {
  EXPECT_EQ(detect_spine(fixtures::cube6()).outcome, SpineOutcome::absent);
}

TEST(Spine, HourglassPinchPath) {
  const auto s = detect_spine(fixtures::hourglass());
  ASSERT_EQ(s.outcome, SpineOutcome::found);
  ASSERT_TRUE(s.path);
  ASSERT_EQ(s.path->size(), 3u);
  EXPECT_EQ(s.path->vertices[1], 4u);

  // Independent check: 4 is a cut vertex between base and top.
  const Graph g = skeleton(fixtures::hourglass());
  for (const auto& p : testing::simple_paths(g, testing::base(g), testing::top(g))) {
    EXPECT_NE(std::find(p.begin(), p.end(), 4u), p.end());
  }
}

TEST(Spine, ZeroBudgetIsUnknown) {
  EXPECT_EQ(detect_spine(fixtures::hourglass(), 0).outcome, SpineOutcome::unknown);
}

TEST(Spine, DisconnectedInteriorIsAbsent) {
  // Two separate cubes: no B1-B1bar path at all.
  auto t = fixtures::cube6();
  const auto second = fixtures::cube6();
  for (auto k : second.tetrahedra) {
    for (auto& v : k) v += 8;
    t.tetrahedra.push_back(k);
  }
  for (auto b : second.boundary) {
    for (auto& v : b.tri) v += 8;
    t.boundary.push_back(b);
  }
  t.vertex_count = 16;
  t.coords.reset();
  EXPECT_EQ(detect_spine(t).outcome, SpineOutcome::absent);
}

TEST(Spine, ManyInteriorPathsMeansAbsent) {
  EXPECT_EQ(detect_spine(fixtures::kuhn_grid(2, 2, 2)).outcome, SpineOutcome::absent);
}

}  // namespace
}  // namespace cubetile
