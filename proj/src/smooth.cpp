#include "meshopt/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace meshopt {

// ---------------------------------------------------------------------------
// Projection

namespace {

Vec3d project_polyline(const Polyline2D& line, const Vec3d& p) {
  const auto n = line.points.size();
  if (n == 0) throw ArgumentError("project: empty polyline");
  if (n == 1) return {line.points[0].x(), line.points[0].y(), p.z()};
  const Eigen::Vector2d q = p.head<2>();
  const std::size_t segments = line.closed ? n : n - 1;
  Eigen::Vector2d best = line.points[0];
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < segments; ++i) {
    const Eigen::Vector2d& a = line.points[i];
    const Eigen::Vector2d& b = line.points[(i + 1) % n];
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0 ? (q - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Eigen::Vector2d c = t == 0.0 ? a : (t == 1.0 ? b : Eigen::Vector2d(a + t * ab));
    const double d2 = (q - c).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = c;
    }
  }
  return {best.x(), best.y(), p.z()};
}

struct Projector {
  const Vec3d& p;
  Vec3d operator()(const Polyline2D& g) const { return project_polyline(g, p); }
  Vec3d operator()(const ImplicitCircle& g) const {
    const Eigen::Vector2d v = p.head<2>() - g.center;
    const double len = v.norm();
    const Eigen::Vector2d dir = len > 0 ? Eigen::Vector2d(v / len) : Eigen::Vector2d::UnitX();
    const Eigen::Vector2d q = g.center + g.radius * dir;
    return {q.x(), q.y(), p.z()};
  }
  Vec3d operator()(const ImplicitSphere& g) const {
    const Vec3d v = p - g.center;
    const double len = v.norm();
    const Vec3d dir = len > 0 ? Vec3d(v / len) : Vec3d::UnitX();
    return g.center + g.radius * dir;
  }
  Vec3d operator()(const FixedPoint& g) const { return g.point; }
};

double tolerance_for(const Mesh& m, const SmoothConfig& cfg) {
  if (cfg.conv_tol > 0) return cfg.conv_tol;
  if (m.num_vertices() == 0) return 1e-8;
  const Vec3d lo = m.points().rowwise().minCoeff();
  const Vec3d hi = m.points().rowwise().maxCoeff();
  const double diag = (hi - lo).norm();
  return 1e-8 * (diag > 0 ? diag : 1.0);
}

double max_displacement(const Points3d& before, const Points3d& after) {
  if (before.cols() == 0) return 0;
  return (after - before).colwise().norm().maxCoeff();
}

void project_movable(Mesh& m, const SmoothConfig& cfg) {
  for (Index v = 0; v < m.num_vertices(); ++v) {
    const int tag = m.geometry_tag(v);
    if (!m.is_fixed(v) || tag < 0) continue;
    if (tag >= static_cast<int>(cfg.geometries.size())) throw ArgumentError("geometry tag out of range");
    m.points().col(v) = project(cfg.geometries[static_cast<std::size_t>(tag)], m.points().col(v));
  }
}

std::vector<bool> resolve_movable(const Mesh& m, const std::vector<bool>* movable) {
  if (movable) {
    if (static_cast<Index>(movable->size()) != m.num_vertices()) throw ArgumentError("movable mask size mismatch");
    return *movable;
  }
  return free_mask(m);
}

// Shared sweep for both Laplacians; `target` computes the new position of v
// from the coordinates it is given.
template <typename Target>
double laplace_sweep(Mesh& m, Schedule schedule, const std::vector<bool>& movable, Target&& target) {
  const Points3d before = m.points();
  const Points3d& source = before;
  for (Index v = 0; v < m.num_vertices(); ++v) {
    if (!movable[static_cast<std::size_t>(v)]) continue;
    const auto star = vertex_star(m, v);
    if (star.empty()) throw TopologyError("vertex " + std::to_string(v) + " has an empty star");
    const Points3d& coords = schedule == Schedule::GaussSeidel ? m.points() : source;
    m.points().col(v) = target(v, star, coords);
  }
  return max_displacement(before, m.points());
}

bool is_element_edge(const ElementRef& el, Index v, Index w) {
  if (el.is_tet()) return true;
  const auto& vs = el.verts;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Index a = vs[i], b = vs[(i + 1) % vs.size()];
    if ((a == v && b == w) || (a == w && b == v)) return true;
  }
  return false;
}

double scale_for(const Mesh& m, const QualityFn& f) {
  return is_averaged(f.kind) && m.num_elements() > 0 ? 1.0 / static_cast<double>(m.num_elements()) : 1.0;
}

}  // namespace

Vec3d project(const Geometry& g, const Vec3d& p) { return std::visit(Projector{p}, g); }

// ---------------------------------------------------------------------------

void SmoothConfig::validate() const {
  if (max_iters < 1) throw ArgumentError("max_iters must be >= 1");
  if (!(ls_shrink > 0 && ls_shrink < 1)) throw ArgumentError("ls_shrink must lie in (0, 1)");
  if (!(ls_slope > 0 && ls_slope < 1)) throw ArgumentError("ls_slope must lie in (0, 1)");
  if (!(step_rho > 0)) throw ArgumentError("step_rho must be positive");
  if (conv_tol < 0) throw ArgumentError("conv_tol must be positive (0 selects the default)");
}

std::vector<bool> movable_mask(const Mesh& m, const SmoothConfig& cfg) {
  std::vector<bool> mask = free_mask(m);
  if (cfg.project)
    for (Index v = 0; v < m.num_vertices(); ++v)
      if (m.geometry_tag(v) >= 0) mask[static_cast<std::size_t>(v)] = true;
  return mask;
}

double laplace_step(Mesh& m, Schedule schedule, const std::vector<bool>* movable) {
  const auto mask = resolve_movable(m, movable);
  return laplace_sweep(m, schedule, mask, [](Index, const std::vector<Index>& star, const Points3d& x) {
    Vec3d sum = Vec3d::Zero();
    for (Index w : star) sum += x.col(w);
    return Vec3d(sum / static_cast<double>(star.size()));
  });
}

double laplace_weighted_step(Mesh& m, Schedule schedule, const std::vector<bool>* movable) {
  const auto mask = resolve_movable(m, movable);
  return laplace_sweep(m, schedule, mask, [&m](Index v, const std::vector<Index>& star, const Points3d& x) {
    std::vector<double> w(star.size(), 0.0);
    for (std::size_t i = 0; i < star.size(); ++i)
      for (Index e : shared_elements(m, v, star[i])) {
        const ElementRef& el = m.element(e);
        if (is_element_edge(el, v, star[i])) w[i] += el.is_tet() ? 1.0 : norm::c_e(el.size());
      }
    // Relative weights: uniform stars reduce to exactly 1.0 each, which makes
    // the update bitwise identical to the plain Laplacian.
    const double w0 = w.front();
    Vec3d sum = Vec3d::Zero();
    double total = 0;
    for (std::size_t i = 0; i < star.size(); ++i) {
      const double r = w[i] / w0;
      sum += r * x.col(star[i]);
      total += r;
    }
    return Vec3d(sum / total);
  });
}

double objective(const Mesh& m, const QualityFn& f) { return scale_for(m, f) * mesh_quality(m, f); }

GradVec grad_objective(const Mesh& m, const QualityFn& f, const std::vector<bool>& movable) {
  return scale_for(m, f) * grad_mesh_quality(m, f, movable);
}

GradVec scale_invariant_direction(const GradVec& grad) {
  const double len = grad.norm();
  if (len == 0) return GradVec::Zero(grad.rows(), grad.cols());
  return grad / std::sqrt(len);
}

GradVec scale_invariant_direction(const Mesh& m, const std::vector<ElementGradient>& parts,
                                  const std::vector<bool>& movable) {
  std::vector<ElementGradient> scaled = parts;
  for (auto& part : scaled) {
    // Only the movable components take part in the element norm.
    const auto& verts = m.element(part.element).verts;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (!movable[static_cast<std::size_t>(verts[i])]) part.grad.col(static_cast<Index>(i)).setZero();
    const double len = part.grad.norm();
    if (len > 0) part.grad /= std::sqrt(len);
  }
  GradVec out = GradVec::Zero(3, m.num_vertices());
  scatter(m, scaled, movable, out);
  return out;
}

StepResult gradient_ascent_step(Mesh& m, const QualityFn& f, const SmoothConfig& cfg) {
  const auto movable = movable_mask(m, cfg);
  const double scale = scale_for(m, f);
  const double sign = sense(f.kind) == Sense::Maximize ? 1.0 : -1.0;

  const GradVec grad = grad_objective(m, f, movable);
  GradVec dir;
  switch (cfg.normalization) {
    case Normalization::None: dir = grad; break;
    case Normalization::Global: dir = scale_invariant_direction(grad); break;
    case Normalization::PerElement: {
      auto parts = element_gradients(m, f);
      for (auto& p : parts) p.grad *= scale;
      dir = scale_invariant_direction(m, parts, movable);
      break;
    }
  }

  StepResult result;
  result.objective = objective(m, f);
  const double slope = grad.cwiseProduct(dir).sum();
  if (!(slope > 0)) return result;

  const Points3d start = m.points();
  const double noise = 1e-12 * std::max(1.0, std::abs(result.objective));
  for (double rho = cfg.step_rho; rho >= cfg.ls_floor; rho *= cfg.ls_shrink) {
    m.points() = start + (sign * rho) * dir;
    double trial;
    try {
      trial = objective(m, f);
    } catch (const SingularityError&) {
      trial = std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::isfinite(trial)) continue;
    bool accept = sign * (trial - result.objective) >= cfg.ls_slope * rho * slope;
    if (!accept && std::abs(trial - result.objective) <= noise) {
      // Values agree to round-off, so the Armijo gain is invisible; use the
      // approximate Armijo test on the directional derivative instead.
      try {
        const double trial_slope = grad_objective(m, f, movable).cwiseProduct(dir).sum();
        accept = trial_slope >= (2 * cfg.ls_slope - 1) * slope;
      } catch (const SingularityError&) {
      }
    }
    if (accept) {
      result.step = rho;
      result.objective = trial;
      result.displacement = max_displacement(start, m.points());
      return result;
    }
  }
  m.points() = start;
  result.stalled = true;
  return result;
}

SmoothResult smooth(Mesh& m, const SmoothConfig& cfg) {
  cfg.validate();
  const double tol = tolerance_for(m, cfg);
  SmoothResult result;
  result.quality = cfg.method == Method::GradAscent ? cfg.quality : QualityFn(QualityKind::LambdaEdges);
  if (cfg.adaptive_weights && result.quality.weights.empty())
    result.quality.weights.assign(static_cast<std::size_t>(m.num_elements()), 1.0);

  const auto movable = movable_mask(m, cfg);
  for (int it = 1; it <= cfg.max_iters; ++it) {
    const Points3d before = m.points();
    bool stalled = false;
    switch (cfg.method) {
      case Method::Laplace: laplace_step(m, cfg.schedule, &movable); break;
      case Method::LaplaceWeighted: laplace_weighted_step(m, cfg.schedule, &movable); break;
      case Method::GradAscent: stalled = gradient_ascent_step(m, result.quality, cfg).stalled; break;
    }
    if (cfg.project) project_movable(m, cfg);
    if (cfg.adaptive_weights) result.quality.weights = adaptive_weights(m, result.quality);

    result.iters = it;
    result.trace.push_back(objective(m, result.quality));
    // A stall that leaves the mesh in place is a numerical stationary point.
    result.converged = max_displacement(before, m.points()) < tol;
    result.stalled = stalled;
    if (stalled || result.converged) break;
  }
  result.final_quality = result.trace.empty() ? objective(m, result.quality) : result.trace.back();
  return result;
}

std::vector<double> adaptive_weights(const Mesh& m, const QualityFn& f, const AdaptiveWeightParams& params) {
  const QualityFn iq(QualityKind::Iq2);
  Mesh probe = m;
  probe.points() += params.probe_step * grad_mesh_quality(m, iq);

  std::vector<double> w = f.weights;
  if (w.empty()) w.assign(static_cast<std::size_t>(m.num_elements()), 1.0);
  for (Index e = 0; e < m.num_elements(); ++e) {
    const double before = element_quality(m, e, QualityKind::Iq2);
    const double after = element_quality(probe, e, QualityKind::Iq2);
    if (after - before > params.improvement && before < params.threshold) w[static_cast<std::size_t>(e)] *= params.shrink;
  }
  double mean = 0;
  for (double x : w) mean += x;
  mean /= static_cast<double>(w.size());
  for (double& x : w) x /= mean;
  return w;
}

}  // namespace meshopt
