#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubetile/io.hpp"
#include "cubetile/mesh.hpp"
#include "cubetile/solver.hpp"
#include "cubetile/tiling.hpp"
#include "cubetile/triple.hpp"
#include "cubetile/verify.hpp"

namespace cubetile::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr double kOracleTolerance = 1e-4;

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string input;
  std::string out;
  std::string result_path;
  std::string tiling_path;
  double tol = 1e-8;
  double verify_tol = 1e-6;
  std::size_t max_iter = 10'000;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t budget = 1'000'000;
  bool weighted = false;
  bool cross_check = false;
};

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), out_(out), err_(err) {
    const char* v = std::getenv("CUBETILE_VERBOSE");
    verbose_ = v != nullptr && *v != '\0' && std::string_view(v) != "0";
  }

  int validate_cmd() {
    const auto t = mesh();
    const auto report = validate(t);
    emit("validation.json", save_validation(report), true);
    summary("validation " + std::string(report.ok() ? "ok" : "failed"));
    for (const auto& c : report.checks) {
      if (!c.pass) log(c.name + ": " + c.witness, true);
    }
    return report.ok() ? kExitOk : kExitFailed;
  }

  int solve_cmd() {
    const auto t = mesh();
    const auto res = solve(t);
    emit("metric.json", save_metric(res.m0), false);
    emit("result.json", save_result(res), true);
    summary("h " + format_double(res.h) + ", lambda " + format_double(res.lambda) +
            (res.diagnostics.converged ? "" : " (not converged)"));
    return res.diagnostics.converged ? kExitOk : kExitNotConverged;
  }

  int tile_cmd() {
    const auto t = mesh();
    const auto res = result(t);
    if (!res) return kExitNotConverged;
    const auto tiling = build_tiling(t, *res, weights(t));
    emit("tiling.json", save_tiling(tiling), true);
    summary("tiling of " + std::to_string(tiling.boxes.size()) + " boxes, h " +
            format_double(tiling.h));
    return kExitOk;
  }

  int verify_cmd() {
    const auto t = mesh();
    const auto res = result(t);
    if (!res) return kExitNotConverged;
    const auto tiling = tiling_for(t, *res);
    const auto decision = check_triple_intersection(t, *res, triple_options());
    const auto report = verify(t, tiling, *res, decision);
    emit("verification.json", save_verification(report), true);
    summary("verification " + std::string(report.pass ? "passed" : "failed"));
    for (const auto& c : report.checks) {
      if (!c.pass) log(c.name + ": " + c.witness, true);
    }
    return report.pass ? kExitOk : kExitFailed;
  }

  int check_triple_cmd() {
    const auto t = mesh();
    const auto res = result(t);
    if (!res) return kExitNotConverged;
    const auto decision = check_triple_intersection(t, *res, triple_options());
    emit("decision.json", decision_document(t, decision), true);
    summary("triple intersection " + std::string(to_string(decision.verdict)));
    return verdict_code(decision.verdict);
  }

  int export_cmd() {
    const auto t = mesh();
    const auto res = result(t);
    if (!res) return kExitNotConverged;
    const auto tiling = tiling_for(t, *res);
    emit("tiling.obj", export_tiling_obj(tiling), true);
    if (!cfg_.out.empty() && t.coords) emit("mesh.obj", export_mesh_obj(t), false);
    summary("exported " + std::to_string(tiling.boxes.size()) + " boxes");
    return kExitOk;
  }

  int oracle_cmd() {
    const auto t = mesh();
    const auto res = solve(t);
    if (!res.diagnostics.converged) {
      summary("solver did not converge");
      return kExitNotConverged;
    }
    const double gap = oracle_gap(t, res);
    ordered_json doc;
    doc["gap"] = gap;
    doc["tolerance"] = kOracleTolerance;
    doc["pass"] = gap <= kOracleTolerance;
    emit("oracle.json", doc.dump(2) + "\n", true);
    summary("oracle gap " + format_double(gap));
    return gap <= kOracleTolerance ? kExitOk : kExitFailed;
  }

  int pipeline_cmd() {
    if (cfg_.out.empty()) throw UsageError("pipeline needs --out");
    const auto t = mesh();
    const auto validation = validate(t);
    emit("validation.json", save_validation(validation), false);
    if (!validation.ok()) log("mesh failed validation; continuing on its skeleton", true);

    const auto res = solve(t);
    if (!res.diagnostics.converged) {
      emit("result.json", save_result(res), false);
      summary("solver did not converge");
      return kExitNotConverged;
    }
    const auto tiling = build_tiling(t, res, weights(t));
    const auto decision = check_triple_intersection(t, res, triple_options());
    const auto report = verify(t, tiling, res, decision);

    std::optional<double> gap;
    if (cfg_.cross_check) gap = oracle_gap(t, res);

    // Every document is complete before the first one is written.
    std::vector<std::pair<std::string, std::string>> docs = {
        {"metric.json", save_metric(res.m0)},
        {"result.json", save_result(res)},
        {"tiling.json", save_tiling(tiling)},
        {"verification.json", save_verification(report)},
        {"decision.json", decision_document(t, decision)},
        {"tiling.obj", export_tiling_obj(tiling)},
    };
    if (t.coords) docs.emplace_back("mesh.obj", export_mesh_obj(t));
    if (gap) {
      ordered_json doc;
      doc["gap"] = *gap;
      doc["tolerance"] = kOracleTolerance;
      doc["pass"] = *gap <= kOracleTolerance;
      docs.emplace_back("oracle.json", doc.dump(2) + "\n");
    }
    for (const auto& [name, content] : docs) emit(name, content, false);

    summary("validation " + std::string(validation.ok() ? "ok" : "failed") + ", h " +
            format_double(res.h) + ", verification " + (report.pass ? "passed" : "failed") +
            ", triple intersection " + std::string(to_string(decision.verdict)));
    if (!validation.ok() || !report.pass) return kExitFailed;
    if (gap && *gap > kOracleTolerance) return kExitFailed;
    if (decision.verdict == TripleVerdict::unknown) return kExitUnknown;
    return kExitOk;
  }

 private:
  Triangulation mesh() {
    log("reading " + cfg_.input, false);
    return load_triangulation_file(cfg_.input);
  }

  std::span<const double> weights(const Triangulation& t) const {
    if (!cfg_.weighted) return {};
    if (!t.weights) throw UsageError("--weighted given but the mesh carries no weights");
    return *t.weights;
  }

  ExtremalResult solve(const Triangulation& t) {
    const Graph g = skeleton(t);
    SolverOptions opts;
    opts.tolerance = cfg_.tol;
    opts.max_outer_iterations = cfg_.max_iter;
    opts.seed = cfg_.seed;
    log("solving on " + std::to_string(g.vertex_count()) + " vertices", false);
    auto res = solve_extremal(g, g.boundary(BoundaryLabel::B1), g.boundary(BoundaryLabel::B1bar),
                              weights(t), opts);
    const auto& d = res.diagnostics;
    log("outer " + std::to_string(d.outer_iterations) + ", newton " +
            std::to_string(d.newton_iterations) + ", constraints " +
            std::to_string(d.constraint_count) + ", residual " + format_double(d.residual),
        false);
    return res;
  }

  // A loaded result is taken as given; a fresh one must converge.
  std::optional<ExtremalResult> result(const Triangulation& t) {
    if (!cfg_.result_path.empty()) {
      auto res = load_result(read_file(cfg_.result_path));
      if (res.m0.size() != t.vertex_count) {
        throw MismatchError("result has " + std::to_string(res.m0.size()) +
                            " entries for a mesh of " + std::to_string(t.vertex_count) +
                            " vertices");
      }
      return res;
    }
    auto res = solve(t);
    if (!res.diagnostics.converged) {
      summary("solver did not converge");
      return std::nullopt;
    }
    return res;
  }

  CubeTiling tiling_for(const Triangulation& t, const ExtremalResult& res) {
    if (!cfg_.tiling_path.empty()) return load_tiling(read_file(cfg_.tiling_path));
    return build_tiling(t, res, weights(t));
  }

  TripleOptions triple_options() const {
    TripleOptions o;
    o.budget = cfg_.budget;
    return o;
  }

  VerificationReport verify(const Triangulation& t, const CubeTiling& tiling,
                            const ExtremalResult& res, const TripleDecision& decision) {
    VerifyOptions o;
    o.tolerance = cfg_.verify_tol;
    o.coverage_samples = cfg_.samples;
    o.seed = cfg_.seed + 1;
    o.triple_certified = decision.verdict == TripleVerdict::holds;
    log("verifying " + std::to_string(tiling.boxes.size()) + " boxes", false);
    return verify_tiling(t, tiling, res, o);
  }

  double oracle_gap(const Triangulation& t, const ExtremalResult& res) {
    const Graph g = skeleton(t);
    log("running brute-force oracle", false);
    const auto ref = brute_force_extremal(g, g.boundary(BoundaryLabel::B1),
                                          g.boundary(BoundaryLabel::B1bar), weights(t));
    double gap = 0.0;
    for (std::size_t v = 0; v < ref.size(); ++v) gap = std::max(gap, std::abs(ref[v] - res.m0[v]));
    return gap;
  }

  std::string decision_document(const Triangulation& t, const TripleDecision& decision) const {
    auto doc = ordered_json::parse(save_decision(decision));
    const auto spine = detect_spine(t, cfg_.budget);
    ordered_json s;
    switch (spine.outcome) {
      case SpineOutcome::found:
        s["outcome"] = "found";
        break;
      case SpineOutcome::absent:
        s["outcome"] = "absent";
        break;
      case SpineOutcome::unknown:
        s["outcome"] = "unknown";
        break;
    }
    s["path"] = spine.path ? ordered_json(spine.path->vertices) : ordered_json(nullptr);
    doc["spine"] = std::move(s);
    return doc.dump(2) + "\n";
  }

  static int verdict_code(TripleVerdict v) {
    switch (v) {
      case TripleVerdict::holds:
        return kExitOk;
      case TripleVerdict::fails:
        return kExitFailed;
      case TripleVerdict::unknown:
        break;
    }
    return kExitUnknown;
  }

  // Documents go to --out when given; otherwise the primary one goes to stdout.
  void emit(const std::string& name, const std::string& content, bool primary) {
    if (cfg_.out.empty()) {
      if (primary) out_ << content;
      return;
    }
    fs::create_directories(cfg_.out);
    const auto path = (fs::path(cfg_.out) / name).string();
    write_file_atomic(path, content);
    log("wrote " + path, false);
  }

  void summary(const std::string& line) {
    if (cfg_.out.empty()) {
      log(line, true);
    } else {
      out_ << line << "\n";
    }
  }

  void log(const std::string& line, bool always) {
    if (always || verbose_) err_ << line << "\n";
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  bool verbose_ = false;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Discrete extremal metrics and cube tilings of triangulated cubes", "cubetile"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "TOML or INI file supplying any of the options below");
  app.add_option("--tol", cfg.tol, "solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--verify-tol", cfg.verify_tol, "verification tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iter", cfg.max_iter, "cutting-plane round cap")->check(CLI::PositiveNumber);
  app.add_option("--samples", cfg.samples, "coverage sample count")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "solver seed; verification uses seed + 1");
  app.add_option("--budget", cfg.budget, "search budget for the triple and spine checks");
  app.add_flag("--weighted", cfg.weighted, "use the mesh's vertex weights");
  app.add_option("--out", cfg.out, "output directory");

  struct Command {
    const char* name;
    const char* help;
    int (Runner::*fn)();
  };
  const Command commands[] = {
      {"validate", "check the topological-cube structure of a mesh", &Runner::validate_cmd},
      {"solve", "compute the extremal metric", &Runner::solve_cmd},
      {"tile", "build the cube tiling", &Runner::tile_cmd},
      {"verify", "verify a tiling", &Runner::verify_cmd},
      {"check-triple", "decide the triple intersection property", &Runner::check_triple_cmd},
      {"export", "write the tiling as OBJ", &Runner::export_cmd},
      {"oracle", "compare the solver with the brute-force oracle", &Runner::oracle_cmd},
      {"pipeline", "validate, solve, tile, check and verify", &Runner::pipeline_cmd},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->fallthrough();
    sub->add_option("mesh", cfg.input, "mesh document")->required();
    const std::string name = c.name;
    if (name == "tile" || name == "verify" || name == "check-triple" || name == "export") {
      sub->add_option("--result", cfg.result_path, "result document from `solve`");
    }
    if (name == "verify" || name == "export") {
      sub->add_option("--tiling", cfg.tiling_path, "tiling document from `tile`");
    }
    if (name == "pipeline") {
      sub->add_flag("--cross-check", cfg.cross_check, "also run the brute-force oracle");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  Runner runner(cfg, out, err);
  try {
    for (const auto& c : commands) {
      if (app.got_subcommand(c.name)) return (runner.*c.fn)();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cubetile::cli
