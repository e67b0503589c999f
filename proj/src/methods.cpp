#include "meshopt/methods.hpp"

#include <chrono>
#include <future>

namespace meshopt {

bool apply_method(std::string_view name, SmoothConfig& cfg) {
  if (name == "laplace" || name == "laplacian") {
    cfg.method = Method::Laplace;
    return true;
  }
  if (name == "laplace-weighted") {
    cfg.method = Method::LaplaceWeighted;
    return true;
  }
  const auto kind = parse_quality_kind(name);
  if (!kind) return false;
  cfg.method = Method::GradAscent;
  cfg.quality = QualityFn(*kind);
  return true;
}

std::string method_label(std::string_view name) {
  if (name == "laplace" || name == "laplacian") return "Laplacian";
  return std::string(name);
}

std::vector<std::string> comparison_methods() {
  return {"laplace", "lambda1", "lambda2", "lambda3", "lambda4", "lambda5", "mr", "sqrt-mr"};
}

RunReport run_method(Mesh& m, std::string_view name, const SmoothConfig& base, QualityKind measure) {
  SmoothConfig cfg = base;
  if (!apply_method(name, cfg)) throw ArgumentError("unknown method '" + std::string(name) + "'");
  const auto start = std::chrono::steady_clock::now();
  const SmoothResult res = smooth(m, cfg);
  const auto stop = std::chrono::steady_clock::now();

  RunReport r;
  r.method = method_label(name);
  r.iterations = res.iters;
  r.converged = res.converged;
  r.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  r.quality = quality_report(m, measure);
  return r;
}

std::vector<RunReport> compare_methods(const Mesh& m, const std::vector<std::string>& names, const SmoothConfig& base,
                                       QualityKind measure, bool parallel) {
  for (const auto& n : names) {
    SmoothConfig probe = base;
    if (!apply_method(n, probe)) throw ArgumentError("unknown method '" + n + "'");
  }
  std::vector<RunReport> rows;
  RunReport initial;
  initial.method = "Initial";
  initial.quality = quality_report(m, measure);
  rows.push_back(std::move(initial));

  const auto launch = parallel ? std::launch::async : std::launch::deferred;
  std::vector<std::future<RunReport>> jobs;
  for (const auto& n : names)
    jobs.push_back(std::async(launch, [&m, n, &base, measure] {
      Mesh copy = m;
      return run_method(copy, n, base, measure);
    }));
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

}  // namespace meshopt
