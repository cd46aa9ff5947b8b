#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cubetile/mesh.hpp"
#include "cubetile/solver.hpp"
#include "cubetile/tiling.hpp"

namespace cubetile {

struct CheckRecord {
  std::string name;
  bool pass = true;
  /// Worst-case value of the checked quantity (see each check).
  double margin = 0.0;
  std::string witness;
  /// Informational checks do not enter the global verdict.
  bool mandatory = true;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;
  bool pass = true;

  const CheckRecord* find(std::string_view name) const;
};

inline constexpr std::string_view kCheckContact = "contact";
inline constexpr std::string_view kCheckBoundary = "boundary";
inline constexpr std::string_view kCheckContainment = "containment";
inline constexpr std::string_view kCheckOverlap = "pairwise_overlap";
inline constexpr std::string_view kCheckCoverage = "coverage";
inline constexpr std::string_view kCheckVolume = "volume";
inline constexpr std::string_view kCheckShortCurves = "short_curves";
inline constexpr std::string_view kCheckExtremality = "extremality";

struct VerifyOptions {
  double tolerance = 1e-6;
  std::size_t coverage_samples = 1'000'000;
  std::uint64_t seed = 1;
  /// Random metrics drawn for the Hoelder sweep of the extremality check.
  std::size_t holder_samples = 1000;
  /// Set when the triple property was certified; short_curves and
  /// extremality then become mandatory.
  bool triple_certified = false;
};

/// Margins: contact = worst edge gap (negative when apart), boundary and
/// containment = worst distance outside, pairwise_overlap = largest
/// intersection volume, coverage = covered fraction, volume = |sum - vol R|.
VerificationReport verify_tiling(const Triangulation& t, const CubeTiling& tiling,
                                 const ExtremalResult& res, const VerifyOptions& opts = {});

struct ShortCurves {
  double d23 = 0.0;
  double d33 = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// min(d(B2, B2bar), d(B3, B3bar)) >= 1/sqrt(h) - tol. With weights the
/// side distances use sqrt(omega) m0, the metric the tiling places along x and y.
ShortCurves check_short_curves(const Graph& g, const ExtremalResult& res, double tol = 1e-6,
                               std::span<const double> omega = {});

struct ExtremalityCheck {
  double lhat_s = 0.0;
  double lambda = 0.0;
  /// min over random m of h * |m|_3 - l_m; nonnegative when the sweep holds.
  double holder_margin = 0.0;
  bool pass = false;
};

/// Side-length metric s(v) = z-extent of C_v: |lhat_s - lambda| <= tol, and
/// l_m <= h |m|_3 + tol for `samples` random metrics.
ExtremalityCheck check_tiling_extremality(const Triangulation& t, const CubeTiling& tiling,
                                          double lambda, double tol = 1e-6,
                                          std::size_t samples = 1000, std::uint64_t seed = 1);

/// Uniform double in [0, 1) from 53 random bits; independent of the
/// standard library's distribution implementation.
double unit_random(std::uint64_t bits);

}  // namespace cubetile
