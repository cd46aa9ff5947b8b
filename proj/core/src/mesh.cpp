#include "cubetile/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cubetile {

using nlohmann::json;

bool PathSeq::contains(VertexId v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

VertexSet make_vertex_set(std::vector<VertexId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

namespace {

constexpr std::array<std::string_view, 6> kLabelNames = {"B1", "B1bar", "B2",
                                                          "B2bar", "B3", "B3bar"};

std::string tri_string(const Tri& t) {
  std::ostringstream os;
  os << '[' << t[0] << ',' << t[1] << ',' << t[2] << ']';
  return os.str();
}

std::string edge_string(VertexId a, VertexId b) {
  std::ostringstream os;
  os << '(' << a << ',' << b << ')';
  return os.str();
}

using Edge = std::pair<VertexId, VertexId>;

Edge make_edge(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

std::array<Tri, 4> tet_faces(const Tet& t) {
  return {make_tri(t[0], t[1], t[2]), make_tri(t[0], t[1], t[3]),
          make_tri(t[0], t[2], t[3]), make_tri(t[1], t[2], t[3])};
}

std::array<Edge, 3> tri_edges(const Tri& t) {
  return {make_edge(t[0], t[1]), make_edge(t[0], t[2]), make_edge(t[1], t[2])};
}

// Union-find for connectivity checks.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Link of an edge or vertex given as a list of link edges: true iff it is a
// single cycle (closed == true) or a single simple path (closed == false).
bool is_cycle_or_path(const std::vector<Edge>& link, bool closed) {
  if (link.empty()) return false;
  std::map<VertexId, int> degree;
  for (auto [a, b] : link) {
    ++degree[a];
    ++degree[b];
  }
  int ends = 0;
  for (auto [v, d] : degree) {
    if (d == 1) {
      ++ends;
    } else if (d != 2) {
      return false;
    }
  }
  if (closed ? ends != 0 : ends != 2) return false;
  std::map<VertexId, std::size_t> local;
  for (auto [v, d] : degree) local.emplace(v, local.size());
  DisjointSets ds(local.size());
  for (auto [a, b] : link) ds.unite(local[a], local[b]);
  const auto root = ds.find(0);
  for (std::size_t i = 1; i < local.size(); ++i) {
    if (ds.find(i) != root) return false;
  }
  // A connected graph with all degrees 2 is a cycle; with two ends, a path.
  return true;
}

}  // namespace

std::string_view to_string(BoundaryLabel l) { return kLabelNames[index_of(l)]; }

BoundaryLabel parse_label(std::string_view s) {
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == s) return static_cast<BoundaryLabel>(i);
  }
  throw LabelError("unknown boundary label \"" + std::string(s) + "\"");
}

Tri make_tri(VertexId a, VertexId b, VertexId c) {
  Tri t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

bool operator==(const BoundaryTriangle& a, const BoundaryTriangle& b) {
  return a.tri == b.tri && a.label == b.label;
}

bool operator==(const Triangulation& a, const Triangulation& b) {
  return a.vertex_count == b.vertex_count && a.tetrahedra == b.tetrahedra &&
         a.boundary == b.boundary && a.weights == b.weights && a.coords == b.coords;
}

// ---------------------------------------------------------------------------
// Document I/O

namespace {

VertexId read_vertex(const json& j, std::size_t n, const char* what) {
  if (!j.is_number_integer()) {
    throw ParseError(std::string(what) + " entries must be integers");
  }
  const auto v = j.get<std::int64_t>();
  if (v < 0 || static_cast<std::uint64_t>(v) >= n) {
    throw ReferenceError(std::string(what) + " references unknown vertex " +
                         std::to_string(v) + " (mesh has " + std::to_string(n) +
                         " vertices)");
  }
  return static_cast<VertexId>(v);
}

}  // namespace

Triangulation load_triangulation(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("mesh document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("mesh document must be an object");

  Triangulation t;
  if (!doc.contains("vertices") || !doc["vertices"].is_number_integer() ||
      doc["vertices"].get<std::int64_t>() < 0) {
    throw ParseError("\"vertices\" must be a nonnegative integer");
  }
  t.vertex_count = doc["vertices"].get<std::size_t>();

  if (!doc.contains("tetrahedra") || !doc["tetrahedra"].is_array()) {
    throw ParseError("\"tetrahedra\" must be an array");
  }
  for (const auto& tj : doc["tetrahedra"]) {
    if (!tj.is_array() || tj.size() != 4) {
      throw ParseError("each tetrahedron must be an array of 4 vertex ids");
    }
    Tet tet{};
    for (std::size_t i = 0; i < 4; ++i) tet[i] = read_vertex(tj[i], t.vertex_count, "tetrahedron");
    t.tetrahedra.push_back(tet);
  }

  if (!doc.contains("boundary") || !doc["boundary"].is_array()) {
    throw ParseError("\"boundary\" must be an array");
  }
  for (const auto& bj : doc["boundary"]) {
    if (!bj.is_object() || !bj.contains("tri") || !bj.contains("label")) {
      throw ParseError("boundary records need \"tri\" and \"label\"");
    }
    const auto& tri = bj["tri"];
    if (!tri.is_array() || tri.size() != 3) {
      throw ParseError("boundary \"tri\" must be an array of 3 vertex ids");
    }
    if (!bj["label"].is_string()) throw ParseError("boundary \"label\" must be a string");
    BoundaryTriangle b{make_tri(read_vertex(tri[0], t.vertex_count, "boundary triangle"),
                                read_vertex(tri[1], t.vertex_count, "boundary triangle"),
                                read_vertex(tri[2], t.vertex_count, "boundary triangle")),
                       parse_label(bj["label"].get<std::string>())};
    t.boundary.push_back(b);
  }

  if (doc.contains("weights") && !doc["weights"].is_null()) {
    const auto& w = doc["weights"];
    if (!w.is_array() || w.size() != t.vertex_count) {
      throw ParseError("\"weights\" must hold one number per vertex");
    }
    std::vector<double> ws;
    for (const auto& x : w) {
      if (!x.is_number() || !(x.get<double>() > 0.0)) {
        throw ParseError("\"weights\" entries must be positive numbers");
      }
      ws.push_back(x.get<double>());
    }
    t.weights = std::move(ws);
  }

  if (doc.contains("coords") && !doc["coords"].is_null()) {
    const auto& c = doc["coords"];
    if (!c.is_array() || c.size() != t.vertex_count) {
      throw ParseError("\"coords\" must hold one point per vertex");
    }
    std::vector<std::array<double, 3>> cs;
    for (const auto& p : c) {
      if (!p.is_array() || p.size() != 3) throw ParseError("coords entries need 3 numbers");
      std::array<double, 3> q{};
      for (std::size_t i = 0; i < 3; ++i) {
        if (!p[i].is_number()) throw ParseError("coords entries need 3 numbers");
        q[i] = p[i].get<double>();
      }
      cs.push_back(q);
    }
    t.coords = std::move(cs);
  }
  return t;
}

Triangulation load_triangulation_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open mesh file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_triangulation(ss.str());
}

std::string save_triangulation(const Triangulation& t) {
  // Hand-formatted so that files stay diffable: one tetrahedron per line.
  std::ostringstream os;
  os << "{\n  \"vertices\": " << t.vertex_count << ",\n  \"tetrahedra\": [";
  for (std::size_t i = 0; i < t.tetrahedra.size(); ++i) {
    const auto& k = t.tetrahedra[i];
    os << (i ? ",\n    " : "\n    ") << '[' << k[0] << ", " << k[1] << ", " << k[2] << ", "
       << k[3] << ']';
  }
  os << (t.tetrahedra.empty() ? "],\n" : "\n  ],\n") << "  \"boundary\": [";
  for (std::size_t i = 0; i < t.boundary.size(); ++i) {
    const auto& b = t.boundary[i];
    os << (i ? ",\n    " : "\n    ") << "{\"tri\": [" << b.tri[0] << ", " << b.tri[1] << ", "
       << b.tri[2] << "], \"label\": \"" << to_string(b.label) << "\"}";
  }
  os << (t.boundary.empty() ? "]" : "\n  ]");
  if (t.weights) {
    os << ",\n  \"weights\": " << json(*t.weights).dump();
  }
  if (t.coords) {
    os << ",\n  \"coords\": [";
    for (std::size_t i = 0; i < t.coords->size(); ++i) {
      os << (i ? ",\n    " : "\n    ") << json((*t.coords)[i]).dump();
    }
    os << (t.coords->empty() ? "]" : "\n  ]");
  }
  os << "\n}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const ValidationCheck* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate(const Triangulation& t) {
  ValidationReport report;
  auto add = [&](std::string_view name, bool pass, std::string witness = {}) {
    report.checks.push_back({std::string(name), pass, std::move(witness)});
  };
  const std::size_t n = t.vertex_count;

  {
    std::string witness;
    for (std::size_t i = 0; i < t.tetrahedra.size() && witness.empty(); ++i) {
      auto k = t.tetrahedra[i];
      std::sort(k.begin(), k.end());
      if (std::adjacent_find(k.begin(), k.end()) != k.end()) {
        witness = "tetrahedron " + std::to_string(i) + " repeats a vertex";
      }
    }
    add(kCheckTetVertices, witness.empty(), witness);
  }

  {
    std::string witness;
    for (const auto& k : t.tetrahedra) {
      for (auto v : k) {
        if (v >= n && witness.empty()) witness = "vertex " + std::to_string(v);
      }
    }
    for (const auto& b : t.boundary) {
      for (auto v : b.tri) {
        if (v >= n && witness.empty()) witness = "vertex " + std::to_string(v);
      }
    }
    add(kCheckReferences, witness.empty(), witness);
    if (!witness.empty()) return report;  // remaining checks index by vertex id
  }

  std::map<Tri, int> face_count;
  for (const auto& k : t.tetrahedra) {
    for (const auto& f : tet_faces(k)) ++face_count[f];
  }
  {
    std::string witness;
    for (const auto& [f, c] : face_count) {
      if (c > 2) {
        witness = "triangle " + tri_string(f) + " bounds " + std::to_string(c) + " tetrahedra";
        break;
      }
    }
    add(kCheckFaceManifold, witness.empty(), witness);
  }

  std::set<Tri> free_faces;
  for (const auto& [f, c] : face_count) {
    if (c == 1) free_faces.insert(f);
  }

  std::map<Tri, std::vector<BoundaryLabel>> labels_of;
  for (const auto& b : t.boundary) labels_of[b.tri].push_back(b.label);

  {
    std::string witness;
    for (const auto& f : free_faces) {
      if (!labels_of.count(f)) {
        witness = "boundary triangle " + tri_string(f) + " has no label";
        break;
      }
    }
    if (witness.empty()) {
      for (const auto& [f, ls] : labels_of) {
        if (!free_faces.count(f)) {
          witness = "labeled triangle " + tri_string(f) + " is not a boundary face";
          break;
        }
      }
    }
    add(kCheckBoundaryLabeled, witness.empty(), witness);
  }

  {
    std::string witness;
    std::map<Edge, int> edge_use;
    std::map<VertexId, std::vector<Edge>> vertex_link;
    for (const auto& f : free_faces) {
      for (const auto& e : tri_edges(f)) ++edge_use[e];
      vertex_link[f[0]].push_back(make_edge(f[1], f[2]));
      vertex_link[f[1]].push_back(make_edge(f[0], f[2]));
      vertex_link[f[2]].push_back(make_edge(f[0], f[1]));
    }
    if (free_faces.empty()) witness = "no boundary triangles";
    for (const auto& [e, c] : edge_use) {
      if (c != 2 && witness.empty()) {
        witness = "boundary edge " + edge_string(e.first, e.second) + " lies in " +
                  std::to_string(c) + " boundary triangles";
      }
    }
    for (const auto& [v, link] : vertex_link) {
      if (witness.empty() && !is_cycle_or_path(link, true)) {
        witness = "boundary vertex " + std::to_string(v) + " has a non-disk neighborhood";
      }
    }
    if (witness.empty()) {
      const auto chi = static_cast<long>(vertex_link.size()) - static_cast<long>(edge_use.size()) +
                       static_cast<long>(free_faces.size());
      if (chi != 2) witness = "boundary Euler characteristic " + std::to_string(chi);
    }
    if (witness.empty()) {
      std::map<VertexId, std::size_t> local;
      for (const auto& [v, l] : vertex_link) local.emplace(v, local.size());
      DisjointSets ds(local.size());
      for (const auto& [e, c] : edge_use) ds.unite(local[e.first], local[e.second]);
      for (std::size_t i = 1; i < local.size(); ++i) {
        if (ds.find(i) != ds.find(0)) {
          witness = "boundary surface is disconnected";
          break;
        }
      }
    }
    add(kCheckBoundarySphere, witness.empty(), witness);
  }

  {
    DisjointSets ds(n);
    std::vector<bool> used(n, false);
    for (const auto& k : t.tetrahedra) {
      for (auto v : k) used[v] = true;
      ds.unite(k[0], k[1]);
      ds.unite(k[0], k[2]);
      ds.unite(k[0], k[3]);
    }
    std::string witness;
    if (n == 0) witness = "empty mesh";
    for (VertexId v = 0; v < n && witness.empty(); ++v) {
      if (!used[v]) {
        witness = "vertex " + std::to_string(v) + " is in no tetrahedron";
      } else if (ds.find(v) != ds.find(0)) {
        witness = "vertex " + std::to_string(v) + " is not connected to vertex 0";
      }
    }
    add(kCheckConnected, witness.empty(), witness);
  }

  {
    std::set<Edge> boundary_edges;
    for (const auto& f : free_faces) {
      for (const auto& e : tri_edges(f)) boundary_edges.insert(e);
    }
    std::map<Edge, std::vector<Edge>> edge_link;
    for (const auto& k : t.tetrahedra) {
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
          std::array<VertexId, 2> rest{};
          int r = 0;
          for (int q = 0; q < 4; ++q) {
            if (q != i && q != j) rest[r++] = k[q];
          }
          edge_link[make_edge(k[i], k[j])].push_back(make_edge(rest[0], rest[1]));
        }
      }
    }
    std::string witness;
    for (const auto& [e, link] : edge_link) {
      const bool on_boundary = boundary_edges.count(e) > 0;
      if (!is_cycle_or_path(link, !on_boundary)) {
        witness = std::string(on_boundary ? "boundary" : "interior") + " edge " +
                  edge_string(e.first, e.second) + " has a bad link";
        break;
      }
    }
    add(kCheckEdgeLinks, witness.empty(), witness);
  }

  std::array<std::vector<Tri>, 6> tris_of;
  std::array<std::set<VertexId>, 6> verts_of;
  for (const auto& b : t.boundary) {
    tris_of[index_of(b.label)].push_back(b.tri);
    for (auto v : b.tri) verts_of[index_of(b.label)].insert(v);
  }

  {
    std::string witness;
    for (auto l : kAllLabels) {
      if (tris_of[index_of(l)].empty() && witness.empty()) {
        witness = "label " + std::string(to_string(l)) + " has no triangles";
      }
    }
    add(kCheckLabelsNonempty, witness.empty(), witness);
  }

  {
    std::string witness;
    for (auto l : kAllLabels) {
      const auto& tris = tris_of[index_of(l)];
      if (tris.empty() || !witness.empty()) continue;
      DisjointSets ds(tris.size());
      std::map<Edge, std::size_t> first_owner;
      for (std::size_t i = 0; i < tris.size(); ++i) {
        for (const auto& e : tri_edges(tris[i])) {
          auto [it, inserted] = first_owner.emplace(e, i);
          if (!inserted) ds.unite(i, it->second);
        }
      }
      for (std::size_t i = 1; i < tris.size(); ++i) {
        if (ds.find(i) != ds.find(0)) {
          witness = "label " + std::string(to_string(l)) + ": triangle " + tri_string(tris[i]) +
                    " is not edge-connected to " + tri_string(tris[0]);
          break;
        }
      }
    }
    add(kCheckLabelsConnected, witness.empty(), witness);
  }

  {
    std::string witness;
    for (auto l : {BoundaryLabel::B1, BoundaryLabel::B2, BoundaryLabel::B3}) {
      if (!witness.empty()) break;
      const auto o = opposite(l);
      for (const auto& tri : tris_of[index_of(o)]) {
        for (auto v : tri) {
          if (verts_of[index_of(l)].count(v)) {
            witness = std::string(to_string(l)) + "/" + std::string(to_string(o)) +
                      " share vertex " + std::to_string(v) + " via triangle " + tri_string(tri) +
                      " (" + std::string(to_string(o)) + ")";
            break;
          }
        }
        if (!witness.empty()) break;
      }
    }
    add(kCheckOppositeDisjoint, witness.empty(), witness);
  }

  {
    std::string witness;
    for (const auto& [f, ls] : labels_of) {
      if (ls.size() > 1) {
        witness = "triangle " + tri_string(f) + " carries " + std::to_string(ls.size()) + " labels";
        break;
      }
    }
    add(kCheckAdjacentShare, witness.empty(), witness);
  }

  return report;
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::size_t vertex_count, std::vector<std::vector<VertexId>> adjacency,
             std::array<VertexSet, 6> boundary_sets)
    : adjacency_(std::move(adjacency)), boundary_sets_(std::move(boundary_sets)) {
  adjacency_.resize(vertex_count);
  for (auto& a : adjacency_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  for (auto& b : boundary_sets_) b = make_vertex_set(std::move(b));
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& a : adjacency_) twice += a.size();
  return twice / 2;
}

bool Graph::adjacent(VertexId u, VertexId v) const {
  if (u >= adjacency_.size()) return false;
  const auto& a = adjacency_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

bool Graph::connected() const {
  if (adjacency_.empty()) return true;
  std::vector<bool> seen(adjacency_.size(), false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto u : adjacency_[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == adjacency_.size();
}

void Graph::check_path(const PathSeq& p) const {
  if (p.empty()) throw InvalidPathError("empty path");
  std::vector<bool> seen(vertex_count(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto v = p.vertices[i];
    if (v >= vertex_count()) throw InvalidPathError("path vertex " + std::to_string(v) + " out of range");
    if (seen[v]) throw InvalidPathError("path repeats vertex " + std::to_string(v));
    seen[v] = true;
    if (i > 0 && !adjacent(p.vertices[i - 1], v)) {
      throw InvalidPathError("path vertices " + std::to_string(p.vertices[i - 1]) + " and " +
                             std::to_string(v) + " are not adjacent");
    }
  }
}

Graph skeleton(const Triangulation& t) {
  std::vector<std::vector<VertexId>> adj(t.vertex_count);
  for (const auto& k : t.tetrahedra) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j && k[i] != k[j]) adj[k[i]].push_back(k[j]);
      }
    }
  }
  std::array<VertexSet, 6> sets;
  for (const auto& b : t.boundary) {
    auto& s = sets[index_of(b.label)];
    s.insert(s.end(), b.tri.begin(), b.tri.end());
  }
  return Graph(t.vertex_count, std::move(adj), std::move(sets));
}

Graph graph_from_edges(std::size_t vertex_count,
                       std::span<const std::pair<VertexId, VertexId>> edges,
                       std::array<VertexSet, 6> boundary_sets) {
  std::vector<std::vector<VertexId>> adj(vertex_count);
  for (auto [a, b] : edges) {
    if (a >= vertex_count || b >= vertex_count) throw ReferenceError("edge references unknown vertex");
    if (a == b) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return Graph(vertex_count, std::move(adj), std::move(boundary_sets));
}

}  // namespace cubetile
