#include "cubetile/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "cubetile/io.hpp"

namespace cubetile {

const CheckRecord* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double unit_random(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

namespace {

constexpr std::array<char, 3> kAxisName = {'x', 'y', 'z'};

std::string pair_witness(std::size_t u, std::size_t v, const char* what, double value) {
  std::ostringstream os;
  os << "boxes " << u << " and " << v << ": " << what << ' ' << format_double(value);
  return os.str();
}

CheckRecord check_contact(const Graph& g, const CubeTiling& tiling, double tol) {
  CheckRecord r;
  r.name = kCheckContact;
  r.margin = kInfinity;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (auto v : g.neighbors(u)) {
      if (v < u) continue;
      const auto& a = tiling.boxes[u];
      const auto& b = tiling.boxes[v];
      for (int axis = 0; axis < 3; ++axis) {
        const double overlap = std::min(a.hi(axis), b.hi(axis)) - std::max(a.lo[axis], b.lo[axis]);
        if (overlap < r.margin) {
          r.margin = overlap;
          if (overlap < -tol) {
            std::ostringstream os;
            os << "edge (" << u << ',' << v << ") boxes apart along " << kAxisName[axis]
               << " by " << format_double(-overlap);
            r.witness = os.str();
          }
        }
      }
    }
  }
  if (!std::isfinite(r.margin)) r.margin = 0.0;
  r.pass = r.margin >= -tol;
  if (r.pass) r.witness.clear();
  return r;
}

CheckRecord check_boundary(const Graph& g, const CubeTiling& tiling, double tol) {
  CheckRecord r;
  r.name = kCheckBoundary;
  for (int plane = 0; plane < 6; ++plane) {
    const int axis = plane / 2;
    const bool high = plane % 2 == 1;
    const double level = high ? tiling.container[axis] : 0.0;
    for (auto v : g.boundary(tiling.axes[plane])) {
      const auto& b = tiling.boxes[v];
      // Distance from the closed interval [lo, hi] to the plane level.
      const double off = std::max({0.0, b.lo[axis] - level, level - b.hi(axis)});
      if (off > r.margin) {
        r.margin = off;
        std::ostringstream os;
        os << "vertex " << v << " (" << to_string(tiling.axes[plane]) << ") misses plane "
           << kAxisName[axis] << '=' << format_double(level) << " by " << format_double(off);
        r.witness = os.str();
      }
    }
  }
  r.pass = r.margin <= tol;
  if (r.pass) r.witness.clear();
  return r;
}

CheckRecord check_containment(const CubeTiling& tiling, double tol) {
  CheckRecord r;
  r.name = kCheckContainment;
  for (std::size_t v = 0; v < tiling.boxes.size(); ++v) {
    const auto& b = tiling.boxes[v];
    for (int axis = 0; axis < 3; ++axis) {
      const double off = std::max(-b.lo[axis], b.hi(axis) - tiling.container[axis]);
      if (off > r.margin) {
        r.margin = off;
        std::ostringstream os;
        os << "box " << v << " leaves R along " << kAxisName[axis] << " by " << format_double(off);
        r.witness = os.str();
      }
    }
  }
  r.pass = r.margin <= tol;
  if (r.pass) r.witness.clear();
  return r;
}

CheckRecord check_overlap(const CubeTiling& tiling, double tol) {
  CheckRecord r;
  r.name = kCheckOverlap;
  const auto& boxes = tiling.boxes;
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return boxes[a].lo[0] != boxes[b].lo[0] ? boxes[a].lo[0] < boxes[b].lo[0] : a < b;
  });
  // Sweep along x: a pair can only overlap while the later box starts before
  // the earlier one ends. The exact intersection volume is a product of
  // closed-interval lengths.
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& a = boxes[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto& b = boxes[order[j]];
      if (b.lo[0] >= a.hi(0)) break;
      double vol = 1.0;
      for (int axis = 0; axis < 3 && vol > 0.0; ++axis) {
        vol *= std::max(0.0, std::min(a.hi(axis), b.hi(axis)) - std::max(a.lo[axis], b.lo[axis]));
      }
      if (vol > r.margin) {
        r.margin = vol;
        r.witness = pair_witness(std::min(order[i], order[j]), std::max(order[i], order[j]),
                                 "overlap volume", vol);
      }
    }
  }
  r.pass = r.margin <= tol;
  if (r.pass) r.witness.clear();
  return r;
}

// Uniform grid over R; each cell lists the (inflated) boxes meeting it.
class CoverageGrid {
 public:
  CoverageGrid(const CubeTiling& tiling, double tol) : tiling_(tiling), tol_(tol) {
    const auto n = std::max<std::size_t>(tiling.boxes.size(), 1);
    cells_ = std::clamp(static_cast<int>(std::cbrt(static_cast<double>(n))) * 2, 1, 64);
    grid_.resize(static_cast<std::size_t>(cells_ * cells_ * cells_));
    for (std::size_t v = 0; v < tiling.boxes.size(); ++v) {
      const auto& b = tiling.boxes[v];
      if (b.degenerate()) continue;
      std::array<int, 3> from{};
      std::array<int, 3> to{};
      for (int axis = 0; axis < 3; ++axis) {
        from[axis] = cell(axis, b.lo[axis] - tol);
        to[axis] = cell(axis, b.hi(axis) + tol);
      }
      for (int i = from[0]; i <= to[0]; ++i) {
        for (int j = from[1]; j <= to[1]; ++j) {
          for (int k = from[2]; k <= to[2]; ++k) grid_[index(i, j, k)].push_back(v);
        }
      }
    }
  }

  bool covered(const std::array<double, 3>& p) const {
    for (auto v : grid_[index(cell(0, p[0]), cell(1, p[1]), cell(2, p[2]))]) {
      const auto& b = tiling_.boxes[v];
      bool inside = true;
      for (int axis = 0; axis < 3 && inside; ++axis) {
        inside = p[axis] >= b.lo[axis] - tol_ && p[axis] <= b.hi(axis) + tol_;
      }
      if (inside) return true;
    }
    return false;
  }

 private:
  int cell(int axis, double x) const {
    const double extent = tiling_.container[axis];
    const int c = extent > 0.0 ? static_cast<int>(std::floor(x / extent * cells_)) : 0;
    return std::clamp(c, 0, cells_ - 1);
  }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>((i * cells_ + j) * cells_ + k);
  }

  const CubeTiling& tiling_;
  double tol_;
  int cells_ = 1;
  std::vector<std::vector<std::size_t>> grid_;
};

CheckRecord check_coverage(const CubeTiling& tiling, const VerifyOptions& opts) {
  CheckRecord r;
  r.name = kCheckCoverage;
  const CoverageGrid grid(tiling, opts.tolerance);
  std::mt19937_64 rng(opts.seed);
  std::size_t hit = 0;
  for (std::size_t i = 0; i < opts.coverage_samples; ++i) {
    std::array<double, 3> p{};
    for (int axis = 0; axis < 3; ++axis) p[axis] = unit_random(rng()) * tiling.container[axis];
    if (grid.covered(p)) {
      ++hit;
    } else if (r.witness.empty()) {
      std::ostringstream os;
      os << "point (" << format_double(p[0]) << ", " << format_double(p[1]) << ", "
         << format_double(p[2]) << ") lies in no box";
      r.witness = os.str();
    }
  }
  r.margin = opts.coverage_samples == 0
                 ? 1.0
                 : static_cast<double>(hit) / static_cast<double>(opts.coverage_samples);
  r.pass = hit == opts.coverage_samples;
  return r;
}

CheckRecord check_volume(const CubeTiling& tiling, double tol) {
  CheckRecord r;
  r.name = kCheckVolume;
  double sum = 0.0;
  for (const auto& b : tiling.boxes) sum += b.volume();
  const double target = tiling.container[0] * tiling.container[1] * tiling.container[2];
  r.margin = std::abs(sum - target);
  r.pass = r.margin <= tol;
  if (!r.pass) {
    r.witness = "box volumes sum to " + format_double(sum) + ", container " + format_double(target);
  }
  return r;
}

}  // namespace

VerificationReport verify_tiling(const Triangulation& t, const CubeTiling& tiling,
                                 const ExtremalResult& res, const VerifyOptions& opts) {
  const Graph g = skeleton(t);
  if (tiling.boxes.size() != g.vertex_count() || res.m0.size() != g.vertex_count()) {
    throw MismatchError("tiling, result and mesh sizes differ");
  }
  const double tol = opts.tolerance;
  VerificationReport report;
  report.checks.push_back(check_contact(g, tiling, tol));
  report.checks.push_back(check_boundary(g, tiling, tol));
  report.checks.push_back(check_containment(tiling, tol));
  report.checks.push_back(check_overlap(tiling, tol));
  report.checks.push_back(check_coverage(tiling, opts));
  report.checks.push_back(check_volume(tiling, tol));

  {
    const auto sc = check_short_curves(g, res, tol, tiling.weights);
    CheckRecord r;
    r.name = kCheckShortCurves;
    r.pass = sc.pass;
    r.margin = std::min(sc.d23, sc.d33) - sc.bound;
    if (!sc.pass) {
      r.witness = "d23 " + format_double(sc.d23) + ", d33 " + format_double(sc.d33) +
                  " below " + format_double(sc.bound);
    }
    r.mandatory = opts.triple_certified;
    report.checks.push_back(std::move(r));
  }
  {
    const auto ex = check_tiling_extremality(t, tiling, res.lambda, tol, opts.holder_samples,
                                             opts.seed);
    CheckRecord r;
    r.name = kCheckExtremality;
    r.pass = ex.pass;
    r.margin = std::abs(ex.lhat_s - ex.lambda);
    if (!ex.pass) {
      r.witness = "lhat_s " + format_double(ex.lhat_s) + ", lambda " + format_double(ex.lambda) +
                  ", worst Hoelder margin " + format_double(ex.holder_margin);
    }
    r.mandatory = opts.triple_certified;
    report.checks.push_back(std::move(r));
  }

  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckRecord& c) { return c.pass || !c.mandatory; });
  return report;
}

ShortCurves check_short_curves(const Graph& g, const ExtremalResult& res, double tol,
                               std::span<const double> omega) {
  check_metric(g.vertex_count(), res.m0, omega);
  Metric side = res.m0;
  if (!omega.empty()) {
    for (std::size_t v = 0; v < side.size(); ++v) side[v] *= std::sqrt(omega[v]);
  }
  ShortCurves s;
  s.d23 = distance(g, side, g.boundary(BoundaryLabel::B2), g.boundary(BoundaryLabel::B2bar)).length;
  s.d33 = distance(g, side, g.boundary(BoundaryLabel::B3), g.boundary(BoundaryLabel::B3bar)).length;
  s.bound = std::sqrt(1.0 / res.h);
  s.pass = std::min(s.d23, s.d33) >= s.bound - tol;
  return s;
}

ExtremalityCheck check_tiling_extremality(const Triangulation& t, const CubeTiling& tiling,
                                          double lambda, double tol, std::size_t samples,
                                          std::uint64_t seed) {
  const Graph g = skeleton(t);
  if (tiling.boxes.size() != g.vertex_count()) throw MismatchError("tiling does not match the mesh");
  std::span<const double> omega = tiling.weights;
  const auto& a1 = g.boundary(BoundaryLabel::B1);
  const auto& a2 = g.boundary(BoundaryLabel::B1bar);

  ExtremalityCheck e;
  e.lambda = lambda;
  Metric s(g.vertex_count());
  for (std::size_t v = 0; v < s.size(); ++v) s[v] = tiling.boxes[v].extent[2];
  e.lhat_s = normalized_length(g, s, a1, a2, omega);

  // l_m <= h |m|_3 for every metric m, with h taken from lambda.
  const double h = std::cbrt(lambda);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  e.holder_margin = kInfinity;
  Metric m(g.vertex_count());
  for (std::size_t k = 0; k < samples; ++k) {
    for (auto& x : m) x = unit_random(rng());
    const double l = distance(g, m, a1, a2).length;
    e.holder_margin = std::min(e.holder_margin, h * std::cbrt(volume(m, omega)) - l);
  }
  if (samples == 0) e.holder_margin = 0.0;
  e.pass = std::abs(e.lhat_s - lambda) <= tol && e.holder_margin >= -1e-9;
  return e;
}

}  // namespace cubetile
