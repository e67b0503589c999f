#include "meshopt/report.hpp"

#include "json.hpp"

#include <iomanip>
#include <sstream>

namespace meshopt {

namespace {

nlohmann::json row(const RunReport& r) {
  return {{"method", r.method},
          {"measure", to_string(r.quality.measure)},
          {"average", r.quality.average},
          {"min", r.quality.min},
          {"max", r.quality.max},
          {"invalid_count", r.quality.invalid_count},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"wall_ms", r.wall_ms},
          {"values", r.quality.values}};
}

}  // namespace

std::string to_json(const RunReport& r, int indent) { return row(r).dump(indent); }

std::string to_json(const std::vector<RunReport>& rows, int indent) {
  nlohmann::json out = {{"rows", nlohmann::json::array()}};
  for (const auto& r : rows) out["rows"].push_back(row(r));
  return out.dump(indent);
}

std::string format_table(const std::vector<RunReport>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "method" << std::right << std::setw(12) << "average" << std::setw(12) << "max"
      << std::setw(10) << "invalid" << std::setw(8) << "iters" << '\n';
  out << std::fixed << std::setprecision(4);
  for (const auto& r : rows)
    out << std::left << std::setw(12) << r.method << std::right << std::setw(12) << r.quality.average << std::setw(12)
        << r.quality.max << std::setw(10) << r.quality.invalid_count << std::setw(8) << r.iterations << '\n';
  return out.str();
}

}  // namespace meshopt
