#include "cubetile/tiling.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cubetile/io.hpp"

namespace cubetile {

using nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, 6> kPlaneNames = {"x=0", "x=max", "y=0",
                                                         "y=max", "z=0", "z=max"};

}  // namespace

CubeTiling build_tiling(const Triangulation& t, const ExtremalResult& res,
                        std::span<const double> omega) {
  const Graph g = skeleton(t);
  const auto n = g.vertex_count();
  if (res.m0.size() != n) throw MismatchError("extremal metric does not match the mesh");
  check_metric(n, res.m0, omega);
  if (std::abs(volume(res.m0, omega) - 1.0) > 1e-6) {
    throw DomainError("extremal metric is not normalized to volume 1");
  }
  if (!(res.h > 0.0)) throw DomainError("extremal height must be positive");

  const auto& m = res.m0;
  std::vector<double> side(m.begin(), m.end());
  if (!omega.empty()) {
    for (std::size_t v = 0; v < n; ++v) side[v] = std::sqrt(omega[v]) * m[v];
  }
  const auto z = shortest_path_tree(g, m, g.boundary(kAxisConvention[4])).dist;
  const auto x = shortest_path_tree(g, side, g.boundary(kAxisConvention[0])).dist;
  const auto y = shortest_path_tree(g, side, g.boundary(kAxisConvention[2])).dist;

  CubeTiling tiling;
  tiling.h = res.h;
  const double width = 1.0 / std::sqrt(res.h);
  tiling.container = {width, width, res.h};
  tiling.boxes.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto& b = tiling.boxes[v];
    b.extent = {side[v], side[v], m[v]};
    b.lo = {x[v] - side[v], y[v] - side[v], z[v] - m[v]};
  }
  if (!omega.empty()) tiling.weights.assign(omega.begin(), omega.end());
  return tiling;
}

std::string save_tiling(const CubeTiling& tiling) {
  ordered_json doc;
  doc["h"] = tiling.h;
  doc["container"] = tiling.container;
  ordered_json axes = ordered_json::object();
  for (std::size_t i = 0; i < 6; ++i) axes[std::string(kPlaneNames[i])] = to_string(tiling.axes[i]);
  doc["axis_convention"] = axes;
  ordered_json boxes = ordered_json::object();
  for (std::size_t v = 0; v < tiling.boxes.size(); ++v) {
    boxes[std::to_string(v)] = {{"min", tiling.boxes[v].lo}, {"extent", tiling.boxes[v].extent}};
  }
  doc["boxes"] = std::move(boxes);
  if (!tiling.weights.empty()) doc["weights"] = tiling.weights;
  return doc.dump(2) + "\n";
}

CubeTiling load_tiling(std::string_view text) {
  CubeTiling t;
  try {
    const auto doc = ordered_json::parse(text);
    t.h = doc.at("h").get<double>();
    t.container = doc.at("container").get<std::array<double, 3>>();
    const auto& axes = doc.at("axis_convention");
    for (std::size_t i = 0; i < 6; ++i) {
      t.axes[i] = parse_label(axes.at(std::string(kPlaneNames[i])).get<std::string>());
    }
    const auto& boxes = doc.at("boxes");
    t.boxes.resize(boxes.size());
    for (const auto& [key, value] : boxes.items()) {
      const auto v = std::stoul(key);
      if (v >= t.boxes.size()) throw ParseError("box key " + key + " out of range");
      t.boxes[v].lo = value.at("min").get<std::array<double, 3>>();
      t.boxes[v].extent = value.at("extent").get<std::array<double, 3>>();
    }
    if (doc.contains("weights")) t.weights = doc["weights"].get<std::vector<double>>();
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("tiling document: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("tiling document: ") + e.what());
  }
  return t;
}

std::string export_tiling_obj(const CubeTiling& tiling) {
  std::size_t skipped = 0;
  for (const auto& b : tiling.boxes) skipped += b.degenerate() ? 1 : 0;
  std::ostringstream os;
  os << "# cube tiling, h " << format_double(tiling.h) << "\n";
  os << "# boxes " << tiling.boxes.size() << ", degenerate skipped " << skipped << "\n";
  std::size_t base = 1;
  for (std::size_t v = 0; v < tiling.boxes.size(); ++v) {
    const auto& b = tiling.boxes[v];
    if (b.degenerate()) continue;
    os << "o box" << v << "\n";
    for (int c = 0; c < 8; ++c) {
      os << "v";
      for (int axis = 0; axis < 3; ++axis) {
        os << ' ' << format_double((c >> axis) & 1 ? b.hi(axis) : b.lo[axis]);
      }
      os << "\n";
    }
    // Corner index c has bit k set when the corner sits on the high side of axis k.
    static constexpr int kFaces[6][4] = {{0, 2, 6, 4}, {1, 5, 7, 3}, {0, 4, 5, 1},
                                         {2, 3, 7, 6}, {0, 1, 3, 2}, {4, 6, 7, 5}};
    for (const auto& f : kFaces) {
      os << "f " << base + f[0] << ' ' << base + f[1] << ' ' << base + f[2] << ' ' << base + f[3]
         << "\n";
    }
    base += 8;
  }
  return os.str();
}

}  // namespace cubetile
