#pragma once

#include "meshopt/quality.hpp"

#include <variant>
#include <vector>

namespace meshopt {

// ---------------------------------------------------------------------------
// Projection targets

struct Polyline2D {
  std::vector<Eigen::Vector2d> points;
  bool closed = true;
};
struct ImplicitCircle {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 1.0;
};
struct ImplicitSphere {
  Vec3d center = Vec3d::Zero();
  double radius = 1.0;
};
struct FixedPoint {
  Vec3d point = Vec3d::Zero();
};

using Geometry = std::variant<Polyline2D, ImplicitCircle, ImplicitSphere, FixedPoint>;

/// Nearest point on g. Ties (circle or sphere centre, equidistant segments)
/// resolve to the smallest angle / first segment. Circles and polylines act
/// in the xy plane and keep z.
Vec3d project(const Geometry& g, const Vec3d& p);

// ---------------------------------------------------------------------------
// Drivers

enum class Method { Laplace, LaplaceWeighted, GradAscent };
enum class Schedule { GaussSeidel, Jacobi };
enum class Normalization { None, Global, PerElement };

struct SmoothConfig {
  Method method = Method::GradAscent;
  QualityFn quality{QualityKind::Q2};
  int max_iters = 1000;
  double step_rho = 1.0;
  double ls_shrink = 0.5;
  double ls_slope = 1e-4;
  /// Smallest step tried before the line search gives up.
  double ls_floor = 1e-16;
  /// Max vertex displacement per sweep below which the run has converged;
  /// <= 0 selects 1e-8 times the bounding-box diagonal.
  double conv_tol = 0;
  bool project = false;
  /// Projection targets indexed by Mesh::geometry_tag.
  std::vector<Geometry> geometries;
  Schedule schedule = Schedule::GaussSeidel;
  Normalization normalization = Normalization::None;
  /// Run adaptive_weights after every sweep (planar Q2 only).
  bool adaptive_weights = false;

  void validate() const;
};

/// Vertices that move in a sweep: free vertices, plus fixed vertices with a
/// geometry tag when projection is on.
std::vector<bool> movable_mask(const Mesh& m, const SmoothConfig& cfg);

/// One Laplacian sweep; returns the max vertex displacement.
double laplace_step(Mesh& m, Schedule schedule = Schedule::GaussSeidel, const std::vector<bool>* movable = nullptr);

/// One sweep of the weighted Laplacian v = sum w_vv' v' / sum w_vv' with
/// w_vv' = sum of C_e over the elements sharing edge (v, v').
double laplace_weighted_step(Mesh& m, Schedule schedule = Schedule::GaussSeidel,
                             const std::vector<bool>* movable = nullptr);

struct StepResult {
  double step = 0;          // accepted rho, 0 when the gradient vanished
  double displacement = 0;  // max vertex movement
  double objective = 0;     // objective after the step
  bool stalled = false;     // line search fell below ls_floor
};

/// Value optimized by gradient ascent: mesh_quality, divided by the element
/// count for the averaged kinds.
double objective(const Mesh& m, const QualityFn& f);
GradVec grad_objective(const Mesh& m, const QualityFn& f, const std::vector<bool>& movable);

/// x <- x +/- rho d with Armijo backtracking from cfg.step_rho; d is the
/// (optionally normalized) gradient. Minimization objectives step downhill.
/// Once objective values agree to round-off (1e-12 relative) the sufficient
/// increase is checked on the directional derivative instead (approximate
/// Armijo), so runs can drive the gradient below 1e-10.
StepResult gradient_ascent_step(Mesh& m, const QualityFn& f, const SmoothConfig& cfg);

struct SmoothResult {
  int iters = 0;
  double final_quality = 0;
  bool converged = false;
  bool stalled = false;
  std::vector<double> trace;  // objective after every sweep
  QualityFn quality;          // final weights when adaptive
};

SmoothResult smooth(Mesh& m, const SmoothConfig& cfg);

/// g / sqrt(|g|); zero stays zero.
GradVec scale_invariant_direction(const GradVec& grad);
/// Per-element variant: each element gradient is divided by the square root
/// of its norm before scatter.
GradVec scale_invariant_direction(const Mesh& m, const std::vector<ElementGradient>& parts,
                                  const std::vector<bool>& movable);

struct AdaptiveWeightParams {
  double probe_step = 1e-3;
  double improvement = 1e-5;
  double threshold = 0.6;
  double shrink = 0.99;
};

/// One round of the adaptive element-weight update:
///   1. probe x' = x + probe_step * grad(sum iq2) over free vertices,
///   2. w_e *= shrink where iq2 improves by more than `improvement` and
///      iq2(e) < threshold,
///   3. rescale so the mean weight is 1.
std::vector<double> adaptive_weights(const Mesh& m, const QualityFn& f, const AdaptiveWeightParams& params = {});

}  // namespace meshopt
