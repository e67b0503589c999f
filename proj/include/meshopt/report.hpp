#pragma once

#include "meshopt/quality.hpp"

#include <string>
#include <vector>

namespace meshopt {

/// One smoothing (or plain quality) run in serializable form.
struct RunReport {
  std::string method;
  QualityReport quality;
  int iterations = 0;
  bool converged = true;
  double wall_ms = 0;
};

/// {method, measure, average, min, max, invalid_count, iterations,
///  converged, wall_ms, values}
std::string to_json(const RunReport& r, int indent = 2);

/// {"rows": [...]} with one RunReport object per method.
std::string to_json(const std::vector<RunReport>& rows, int indent = 2);

/// Fixed-width text table: method, average, max, invalid, iterations.
std::string format_table(const std::vector<RunReport>& rows);

}  // namespace meshopt
