#pragma once

#include <string>
#include <string_view>

#include "cubetile/mesh.hpp"
#include "cubetile/metric.hpp"
#include "cubetile/solver.hpp"
#include "cubetile/triple.hpp"
#include "cubetile/verify.hpp"

namespace cubetile {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

/// Throws Error when the file cannot be read.
std::string read_file(const std::string& path);

/// Writes to a sibling temporary file, then renames it over `path`, so
/// readers never see a partial document.
void write_file_atomic(const std::string& path, std::string_view content);

/// Metric document: a JSON array of |V| reals in vertex order.
std::string save_metric(std::span<const double> m);
Metric load_metric(std::string_view text);

/// m0, h, lambda, diagnostics and the active path list.
std::string save_result(const ExtremalResult& res);
ExtremalResult load_result(std::string_view text);

std::string save_validation(const ValidationReport& report);
std::string save_verification(const VerificationReport& report);
std::string save_decision(const TripleDecision& decision);

/// Boundary triangles of the input mesh as OBJ faces, grouped by label.
/// Throws DomainError when the mesh has no coordinates.
std::string export_mesh_obj(const Triangulation& t);

}  // namespace cubetile
