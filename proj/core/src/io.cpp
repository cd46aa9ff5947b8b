#include "cubetile/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cubetile {

using nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot replace " + path);
  }
}

namespace {

ordered_json path_json(const PathSeq& p) { return p.vertices; }

ordered_json optional_path(const std::optional<PathSeq>& p) {
  return p ? path_json(*p) : ordered_json(nullptr);
}

// JSON cannot carry inf/nan; they are written as strings.
ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace

std::string save_metric(std::span<const double> m) {
  return ordered_json(std::vector<double>(m.begin(), m.end())).dump() + "\n";
}

Metric load_metric(std::string_view text) {
  try {
    const auto doc = ordered_json::parse(text);
    if (!doc.is_array()) throw ParseError("metric document must be an array");
    Metric m;
    for (const auto& x : doc) {
      if (!x.is_number()) throw ParseError("metric entries must be numbers");
      m.push_back(x.get<double>());
    }
    return m;
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("metric document: ") + e.what());
  }
}

std::string save_result(const ExtremalResult& res) {
  ordered_json doc;
  doc["m0"] = res.m0;
  doc["h"] = number(res.h);
  doc["lambda"] = number(res.lambda);
  const auto& d = res.diagnostics;
  doc["converged"] = d.converged;
  doc["outer_iterations"] = d.outer_iterations;
  doc["newton_iterations"] = d.newton_iterations;
  doc["constraints"] = d.constraint_count;
  doc["residual"] = number(d.residual);
  doc["master_monotone"] = d.master_monotone;
  ordered_json paths = ordered_json::array();
  for (const auto& p : res.active_paths) paths.push_back(path_json(p));
  doc["active_paths"] = std::move(paths);
  return doc.dump(2) + "\n";
}

ExtremalResult load_result(std::string_view text) {
  ExtremalResult res;
  try {
    const auto doc = ordered_json::parse(text);
    res.m0 = doc.at("m0").get<std::vector<double>>();
    res.h = doc.at("h").get<double>();
    res.lambda = doc.at("lambda").get<double>();
    auto& d = res.diagnostics;
    d.converged = doc.value("converged", false);
    d.outer_iterations = doc.value("outer_iterations", std::size_t{0});
    d.newton_iterations = doc.value("newton_iterations", std::size_t{0});
    d.constraint_count = doc.value("constraints", std::size_t{0});
    if (doc.contains("residual") && doc["residual"].is_number()) d.residual = doc["residual"];
    d.master_monotone = doc.value("master_monotone", true);
    for (const auto& p : doc.value("active_paths", ordered_json::array())) {
      res.active_paths.push_back(PathSeq{p.get<std::vector<VertexId>>()});
    }
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("result document: ") + e.what());
  }
  return res;
}

std::string save_validation(const ValidationReport& report) {
  ordered_json doc;
  doc["ok"] = report.ok();
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  }
  doc["checks"] = std::move(checks);
  return doc.dump(2) + "\n";
}

std::string save_verification(const VerificationReport& report) {
  ordered_json doc;
  doc["pass"] = report.pass;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"mandatory", c.mandatory},
                      {"margin", number(c.margin)},
                      {"witness", c.witness}});
  }
  doc["checks"] = std::move(checks);
  return doc.dump(2) + "\n";
}

namespace {

ordered_json side_json(const SideSearch& s) {
  ordered_json doc;
  doc["verdict"] = std::string(to_string(s.verdict));
  doc["certificate"] = optional_path(s.certificate);
  doc["common_witness"] = optional_path(s.common_witness);
  doc["expansions"] = s.expansions;
  doc["candidates"] = s.candidates;
  ordered_json refs = ordered_json::array();
  for (const auto& r : s.refutations) {
    refs.push_back({{"prefix", path_json(r.prefix)}, {"avoided", path_json(r.avoided)}});
  }
  doc["refutations"] = std::move(refs);
  return doc;
}

}  // namespace

std::string save_decision(const TripleDecision& decision) {
  ordered_json doc;
  doc["verdict"] = std::string(to_string(decision.verdict));
  doc["gamma"] = optional_path(decision.gamma);
  doc["delta"] = optional_path(decision.delta);
  doc["B2"] = side_json(decision.side2);
  doc["B3"] = side_json(decision.side3);
  return doc.dump(2) + "\n";
}

std::string export_mesh_obj(const Triangulation& t) {
  if (!t.coords) throw DomainError("mesh has no coordinates to export");
  std::ostringstream os;
  os << "# boundary of " << t.vertex_count << "-vertex mesh\n";
  for (const auto& p : *t.coords) {
    os << "v " << format_double(p[0]) << ' ' << format_double(p[1]) << ' ' << format_double(p[2])
       << "\n";
  }
  for (auto l : kAllLabels) {
    os << "g " << to_string(l) << "\n";
    for (const auto& b : t.boundary) {
      if (b.label != l) continue;
      os << "f " << b.tri[0] + 1 << ' ' << b.tri[1] + 1 << ' ' << b.tri[2] + 1 << "\n";
    }
  }
  return os.str();
}

}  // namespace cubetile
