#include "meshopt/quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace meshopt {

namespace {

struct KindName {
  QualityKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {QualityKind::MeanRatio, "mr"},         {QualityKind::SqrtMeanRatio, "sqrt-mr"},
    {QualityKind::Iq2, "iq2"},              {QualityKind::Iq3, "iq3"},
    {QualityKind::Q2, "q2"},                {QualityKind::Q3, "q3"},
    {QualityKind::LambdaEdges, "lambda"},   {QualityKind::Lambda1, "lambda1"},
    {QualityKind::Lambda2, "lambda2"},      {QualityKind::Lambda3, "lambda3"},
    {QualityKind::Lambda4, "lambda4"},      {QualityKind::Lambda5, "lambda5"},
    {QualityKind::ProductIq2, "product-iq2"},
};

bool needs_tet(QualityKind k) { return k == QualityKind::Iq3 || lambda_index(k) != 0; }
bool needs_surface(QualityKind k) {
  return k == QualityKind::Iq2 || k == QualityKind::Q2 || k == QualityKind::ProductIq2;
}

void check_applicable(const Mesh& m, QualityKind k) {
  if (m.is_tet_mesh() && needs_surface(k)) throw UnsupportedError(to_string(k) + " is not defined on tetrahedra");
  if (!m.is_tet_mesh() && needs_tet(k)) throw UnsupportedError(to_string(k) + " is only defined on tetrahedra");
}

// Ratio C_e(n) / C_e(3): relative edge weight of an n-gon in the edge energy.
double edge_energy_factor(Index n) { return norm::c_e(n) / norm::c_e(3); }

double element_value(const Mesh& m, Index e, QualityKind kind, double w) {
  const ElementRef& el = m.element(e);
  const Points3d x = m.element_points(el);
  if (el.is_tet()) {
    const Points<double, 4> t = x;
    switch (kind) {
      case QualityKind::MeanRatio: return w * mean_ratio_tet(t);
      case QualityKind::SqrtMeanRatio: {
        const double mr = mean_ratio_tet(t);
        return w * std::copysign(std::sqrt(std::abs(mr)), mr);
      }
      case QualityKind::Iq3: return w * iq3(t);
      case QualityKind::LambdaEdges: return w * lambda_edges(t, true);
      default: return q3_element(t, lambda_index(kind), w);
    }
  }
  const AreaFrame<double> frame = element_frame(m, e);
  switch (kind) {
    case QualityKind::MeanRatio: return w * mean_ratio(x, frame);
    case QualityKind::SqrtMeanRatio: {
      const double mr = mean_ratio(x, frame);
      return w * std::copysign(std::sqrt(std::abs(mr)), mr);
    }
    case QualityKind::Iq2: return w * iq2(x, frame);
    case QualityKind::Q2: return q2_element(x, frame, Q2Variant::Perimeter, w);
    case QualityKind::LambdaEdges: return 0.25 * w * edge_energy_factor(x.cols()) * lambda_edges(x);
    case QualityKind::ProductIq2: {
      const double q = iq2(x, frame);
      return q > 0 ? w * std::log(q) : -std::numeric_limits<double>::infinity();
    }
    default: break;
  }
  throw UnsupportedError(to_string(kind) + " is only defined on tetrahedra");
}

// Gradient of one element split into the area/volume part and the rest.
struct SplitGradient {
  Points3d size;
  Points3d rest;
};

SplitGradient element_gradient(const Mesh& m, Index e, QualityKind kind, double w) {
  const ElementRef& el = m.element(e);
  const Points3d x = m.element_points(el);
  const Index n = x.cols();
  SplitGradient out{Points3d::Zero(3, n), Points3d::Zero(3, n)};
  if (el.is_tet()) {
    const Points<double, 4> t = x;
    switch (kind) {
      case QualityKind::MeanRatio: out.rest = w * grad_mean_ratio_tet(t); return out;
      case QualityKind::SqrtMeanRatio: {
        const double mr = mean_ratio_tet(t);
        if (mr == 0) throw SingularityError("sqrt mean ratio: flat tetrahedron");
        out.rest = (w / (2.0 * std::sqrt(std::abs(mr)))) * grad_mean_ratio_tet(t);
        return out;
      }
      case QualityKind::Iq3: out.rest = w * grad_iq3(t); return out;
      default: {
        const int i = lambda_index(kind);
        out.size = grad_tet_volume(t);
        out.rest = -(w / norm::c_lambda(i)) * grad_lambda_variant(t, i);
        return out;
      }
    }
  }
  const AreaFrame<double> frame = element_frame(m, e);
  switch (kind) {
    case QualityKind::MeanRatio: out.rest = w * grad_mean_ratio(x, frame); return out;
    case QualityKind::SqrtMeanRatio: {
      const double mr = mean_ratio(x, frame);
      if (mr == 0) throw SingularityError("sqrt mean ratio: degenerate element");
      out.rest = (w / (2.0 * std::sqrt(std::abs(mr)))) * grad_mean_ratio(x, frame);
      return out;
    }
    case QualityKind::Iq2: out.rest = w * grad_iq2(x, frame); return out;
    case QualityKind::Q2:
      out.size = grad_signed_area(x, frame);
      out.rest = -w * grad_q2_penalty(x, Q2Variant::Perimeter);
      return out;
    case QualityKind::LambdaEdges:
      out.rest = 0.25 * w * edge_energy_factor(n) * grad_lambda_edges(x);
      return out;
    case QualityKind::ProductIq2: {
      const double q = iq2(x, frame);
      if (!(q > 0)) throw SingularityError("log iq2 undefined on an inverted element");
      out.rest = (w / q) * grad_iq2(x, frame);
      return out;
    }
    default: break;
  }
  throw UnsupportedError(to_string(kind) + " is only defined on tetrahedra");
}

using EdgeKey = std::pair<Index, Index>;

std::map<EdgeKey, int> tet_edge_multiplicity(const Mesh& m) {
  std::map<EdgeKey, int> mult;
  for (const auto& el : m.elements())
    for (auto [a, b] : Mesh::element_edges(el)) ++mult[{std::min(a, b), std::max(a, b)}];
  return mult;
}

template <typename Fn>
auto with_element(Index e, Fn&& fn) {
  try {
    return fn();
  } catch (const ElementError&) {
    throw;
  } catch (const SingularityError& err) {
    throw ElementError(err.what(), e);
  }
}

}  // namespace

void QualityFn::check(const Mesh& m) const {
  if (weights.empty()) return;
  if (static_cast<Index>(weights.size()) != m.num_elements()) throw ArgumentError("one weight per element required");
  for (double w : weights)
    if (!(w > 0)) throw ArgumentError("element weights must be positive");
}

Sense sense(QualityKind kind) { return kind == QualityKind::LambdaEdges ? Sense::Minimize : Sense::Maximize; }

int lambda_index(QualityKind kind) {
  switch (kind) {
    case QualityKind::Lambda1: return 1;
    case QualityKind::Lambda2: return 2;
    case QualityKind::Lambda3: return 3;
    case QualityKind::Lambda4: return 4;
    case QualityKind::Lambda5:
    case QualityKind::Q3: return 5;
    default: return 0;
  }
}

bool is_averaged(QualityKind kind) {
  return kind == QualityKind::MeanRatio || kind == QualityKind::SqrtMeanRatio || kind == QualityKind::Iq2 ||
         kind == QualityKind::Iq3;
}

std::string to_string(QualityKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "unknown";
}

std::optional<QualityKind> parse_quality_kind(std::string_view name) {
  for (const auto& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  return std::nullopt;
}

AreaFrame<double> element_frame(const Mesh& m, Index e) {
  AreaFrame<double> frame;
  if (m.is_planar()) return frame;
  frame.ambient = Ambient::Space;
  const auto& refs = m.reference_normals();
  if (!refs.empty()) frame.reference = refs[static_cast<std::size_t>(e)];
  return frame;
}

double signed_measure(const Mesh& m, Index e) {
  const ElementRef& el = m.element(e);
  const Points3d x = m.element_points(el);
  if (el.is_tet()) return tet_volume(x);
  return signed_area(x, element_frame(m, e));
}

double element_quality(const Mesh& m, Index e, QualityKind kind) {
  check_applicable(m, kind);
  if (m.is_tet_mesh() && kind == QualityKind::LambdaEdges) return lambda_edges(m.element_points(e), true);
  return with_element(e, [&] { return element_value(m, e, kind, 1.0); });
}

double mesh_quality(const Mesh& m, const QualityFn& f) {
  check_applicable(m, f.kind);
  f.check(m);
  if (m.is_tet_mesh() && f.kind == QualityKind::LambdaEdges) {
    double sum = 0;
    for (auto [a, b] : m.edges()) sum += (m.points().col(a) - m.points().col(b)).squaredNorm();
    return 0.5 * sum;
  }
  double sum = 0;
  for (Index e = 0; e < m.num_elements(); ++e)
    sum += with_element(e, [&] { return element_value(m, e, f.kind, f.weight(e)); });
  return sum;
}

std::vector<ElementGradient> element_gradients(const Mesh& m, const QualityFn& f) {
  check_applicable(m, f.kind);
  f.check(m);
  std::vector<ElementGradient> out;
  out.reserve(static_cast<std::size_t>(m.num_elements()));

  if (m.is_tet_mesh() && f.kind == QualityKind::LambdaEdges) {
    // Each mesh edge is split evenly between the tets that share it.
    const auto mult = tet_edge_multiplicity(m);
    for (Index e = 0; e < m.num_elements(); ++e) {
      const auto& v = m.element(e).verts;
      Points3d g = Points3d::Zero(3, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          const Index a = v[static_cast<std::size_t>(i)], b = v[static_cast<std::size_t>(j)];
          const double share = 1.0 / mult.at({std::min(a, b), std::max(a, b)});
          const Vec3d d = m.points().col(a) - m.points().col(b);
          g.col(i) += share * d;
          g.col(j) -= share * d;
        }
      out.push_back({e, std::move(g)});
    }
    return out;
  }

  const bool interior_size_vanishes = m.is_planar() || m.is_tet_mesh();
  for (Index e = 0; e < m.num_elements(); ++e) {
    SplitGradient split = with_element(e, [&] { return element_gradient(m, e, f.kind, f.weight(e)); });
    const auto& verts = m.element(e).verts;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (interior_size_vanishes && !m.on_boundary(verts[i])) continue;
      split.rest.col(static_cast<Index>(i)) += split.size.col(static_cast<Index>(i));
    }
    out.push_back({e, std::move(split.rest)});
  }
  return out;
}

void scatter(const Mesh& m, const std::vector<ElementGradient>& parts, const std::vector<bool>& movable, GradVec& out) {
  for (const auto& part : parts) {
    const auto& verts = m.element(part.element).verts;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const Index v = verts[i];
      if (movable[static_cast<std::size_t>(v)]) out.col(v) += part.grad.col(static_cast<Index>(i));
    }
  }
}

GradVec grad_mesh_quality(const Mesh& m, const QualityFn& f, const std::vector<bool>& movable) {
  if (static_cast<Index>(movable.size()) != m.num_vertices()) throw ArgumentError("movable mask size mismatch");
  GradVec g = GradVec::Zero(3, m.num_vertices());
  scatter(m, element_gradients(m, f), movable, g);
  return g;
}

GradVec grad_mesh_quality(const Mesh& m, const QualityFn& f) { return grad_mesh_quality(m, f, free_mask(m)); }

std::vector<bool> free_mask(const Mesh& m) {
  std::vector<bool> mask(m.fixed_mask());
  mask.flip();
  return mask;
}

QualityReport quality_report(const Mesh& m, QualityKind measure) {
  QualityReport r;
  r.measure = measure;
  r.values.reserve(static_cast<std::size_t>(m.num_elements()));
  for (Index e = 0; e < m.num_elements(); ++e) {
    double q;
    try {
      q = element_quality(m, e, measure);
    } catch (const SingularityError&) {
      q = 0.0;  // fully collapsed element
    }
    r.values.push_back(q);
    if (!(signed_measure(m, e) > 0)) ++r.invalid_count;
  }
  if (!r.values.empty()) {
    r.average = std::accumulate(r.values.begin(), r.values.end(), 0.0) / static_cast<double>(r.values.size());
    const auto [lo, hi] = std::minmax_element(r.values.begin(), r.values.end());
    r.min = *lo;
    r.max = *hi;
  }
  return r;
}

}  // namespace meshopt
