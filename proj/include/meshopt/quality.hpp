#pragma once

#include "meshopt/element_quality.hpp"
#include "meshopt/mesh.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meshopt {

enum class QualityKind {
  MeanRatio,
  SqrtMeanRatio,
  Iq2,
  Iq3,
  Q2,
  Q3,
  LambdaEdges,
  Lambda1,
  Lambda2,
  Lambda3,
  Lambda4,
  Lambda5,
  /// sum of log iq2 (the product of iq2 in log form). Experimental: only
  /// defined on untangled meshes.
  ProductIq2,
};

enum class Sense { Maximize, Minimize };

/// Objective kind plus per-element weights w_e (empty means all 1).
struct QualityFn {
  QualityKind kind = QualityKind::Q2;
  std::vector<double> weights;

  QualityFn() = default;
  explicit QualityFn(QualityKind kind, std::vector<double> weights = {}) : kind(kind), weights(std::move(weights)) {}

  double weight(Index e) const { return weights.empty() ? 1.0 : weights[static_cast<std::size_t>(e)]; }
  /// Throws ArgumentError unless weights are empty or one positive value per element.
  void check(const Mesh& m) const;
};

Sense sense(QualityKind kind);
/// Lambda1..Lambda5 -> 1..5, Q3 -> 5, otherwise 0.
int lambda_index(QualityKind kind);
/// True for the scale-free per-element averages (mr, sqrt-mr, iq2, iq3).
bool is_averaged(QualityKind kind);

std::string to_string(QualityKind kind);
std::optional<QualityKind> parse_quality_kind(std::string_view name);

/// Sign convention for element e: xy determinant on planar meshes, reference
/// normal on surfaces in R^3.
AreaFrame<double> element_frame(const Mesh& m, Index e);

/// Signed area (surface elements) or signed volume (tets).
double signed_measure(const Mesh& m, Index e);

/// Unweighted value of one element.
double element_quality(const Mesh& m, Index e, QualityKind kind);

/// sum_e w_e f(x_e). For LambdaEdges this is the edge energy
/// 1/4 sum_e w_e (C_e / C_tri) lambda(x_e) on surface meshes and
/// 1/2 sum over mesh edges of |xi - xj|^2 on tet meshes, so the gradient at
/// an interior vertex is |V(v)| v - sum V(v) on homogeneous meshes.
double mesh_quality(const Mesh& m, const QualityFn& f);

/// Gradient of mesh_quality with non-movable components zeroed. On planar
/// and tet meshes the area/volume term is only assembled on boundary
/// vertices; at interior vertices it vanishes identically.
GradVec grad_mesh_quality(const Mesh& m, const QualityFn& f, const std::vector<bool>& movable);
/// Movable = not fixed.
GradVec grad_mesh_quality(const Mesh& m, const QualityFn& f);

struct ElementGradient {
  Index element = 0;
  Points3d grad;  // one column per element vertex
};

/// Per-element weighted gradient contributions, before scatter.
std::vector<ElementGradient> element_gradients(const Mesh& m, const QualityFn& f);

/// Adds element contributions into a per-vertex gradient, skipping
/// non-movable vertices.
void scatter(const Mesh& m, const std::vector<ElementGradient>& parts, const std::vector<bool>& movable, GradVec& out);

struct QualityReport {
  QualityKind measure = QualityKind::MeanRatio;
  std::vector<double> values;
  double average = 0;
  double min = 0;
  double max = 0;
  /// Elements with signed area/volume <= 0.
  Index invalid_count = 0;
};

QualityReport quality_report(const Mesh& m, QualityKind measure);

/// Free = not fixed, as a mask.
std::vector<bool> free_mask(const Mesh& m);

}  // namespace meshopt
