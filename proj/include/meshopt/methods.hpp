#pragma once

#include "meshopt/report.hpp"
#include "meshopt/smooth.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meshopt {

/// Applies a method name to cfg: "laplace", "laplace-weighted", or any
/// quality kind name (gradient ascent). Returns false for unknown names.
bool apply_method(std::string_view name, SmoothConfig& cfg);

/// Display label: "Laplacian" for laplace, otherwise the name itself.
std::string method_label(std::string_view name);

/// Laplacian, lambda1..lambda5, mr, sqrt-mr.
std::vector<std::string> comparison_methods();

/// Smooths m in place with the named method and reports `measure` afterwards.
RunReport run_method(Mesh& m, std::string_view name, const SmoothConfig& base, QualityKind measure);

/// An "Initial" row followed by one row per method, each run on its own
/// copy of m. With `parallel` the runs execute concurrently.
std::vector<RunReport> compare_methods(const Mesh& m, const std::vector<std::string>& names, const SmoothConfig& base,
                                       QualityKind measure, bool parallel = true);

}  // namespace meshopt
