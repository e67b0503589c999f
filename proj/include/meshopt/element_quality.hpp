#pragma once

// Element quality measures and their gradients: mean ratio, isoperimetric
// quotients, the shifted q-family and the degree-3 tetrahedral lambdas.

#include "meshopt/geometry.hpp"

#include <numbers>

namespace meshopt {

/// Normalization constants. Each makes the regular element attain the
/// documented optimum (1 for quotients, 0 for the q-family).
namespace norm {

/// area / (c perim^2) = 1 on the regular n-gon.
inline double c_iq2(Index n) { return 1.0 / (4.0 * static_cast<double>(n) * std::tan(std::numbers::pi / n)); }
/// area / (c lambda) = 1 on the regular n-gon (sqrt(3)/12 for triangles).
inline double c_mr(Index n) { return 1.0 / (4.0 * std::tan(std::numbers::pi / n)); }
inline double c_mr_tri() { return std::numbers::sqrt3 / 12.0; }
/// Mixed-mesh constant C_e; includes the factor 1/2 from edges shared by two
/// elements, so C_e = sqrt(3)/6 for triangles and 1/2 for quads.
inline double c_e(Index n) { return 1.0 / (2.0 * std::tan(std::numbers::pi / n)); }
/// vol / area^(3/2) of the regular tetrahedron.
inline double c_iq3_tet() { return 1.0 / (6.0 * std::numbers::sqrt2 * std::pow(3.0, 0.75)); }
/// lambda_i / vol of the regular tetrahedron, i = 1..5.
inline double c_lambda(int i) {
  const double vol = 1.0 / (6.0 * std::numbers::sqrt2);  // unit edge
  const double face = std::numbers::sqrt3 / 4.0;
  switch (i) {
    case 1: return 4.0 * face * 3.0 / vol;
    case 2: return 4.0 * std::pow(face, 1.5) / vol;
    case 3: return std::pow(6.0, 1.5) / vol;
    case 4: return 6.0 / vol;
    case 5: return std::pow(4.0 * face, 1.5) / vol;
    default: throw ArgumentError("lambda variant must be in 1..5");
  }
}

}  // namespace norm

/// How a surface element's area gets its sign. Planar elements use the xy
/// determinant; elements in R^3 use |nu|/2 signed by nu . reference (no
/// sign flip when the reference is zero).
template <typename S>
struct AreaFrame {
  Ambient ambient = Ambient::Planar;
  Vec3<S> reference = Vec3<S>::Zero();
};

template <typename Derived>
typename Derived::Scalar signed_area(const Eigen::MatrixBase<Derived>& x,
                                     const AreaFrame<typename Derived::Scalar>& frame) {
  using S = typename Derived::Scalar;
  if (frame.ambient == Ambient::Planar) return polygon_area_signed2d(x);
  const Vec3<S> nu = polygon_normal(x);
  const S a = nu.norm() / S(2);
  return nu.dot(frame.reference) < S(0) ? -a : a;
}

template <typename Derived>
Points<typename Derived::Scalar> grad_signed_area(const Eigen::MatrixBase<Derived>& x,
                                                  const AreaFrame<typename Derived::Scalar>& frame) {
  using S = typename Derived::Scalar;
  if (frame.ambient == Ambient::Planar) return grad_polygon_area_signed2d(x);
  Points<S> g = grad_polygon_area(x);
  if (polygon_normal(x).dot(frame.reference) < S(0)) g = -g;
  return g;
}

/// Sum of squared edge lengths: cyclic for polygons, all six edges for tets.
template <typename Derived>
typename Derived::Scalar lambda_edges(const Eigen::MatrixBase<Derived>& x, bool tet = false) {
  using S = typename Derived::Scalar;
  const Index n = x.cols();
  if (n < 2) throw ArgumentError("lambda_edges: need at least 2 vertices");
  S sum = 0;
  if (tet) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) sum += (x.col(i) - x.col(j)).squaredNorm();
    return sum;
  }
  for (Index i = 0; i < n; ++i) sum += (x.col((i + 1) % n) - x.col(i)).squaredNorm();
  return sum;
}

template <typename Derived>
Points<typename Derived::Scalar> grad_lambda_edges(const Eigen::MatrixBase<Derived>& x, bool tet = false) {
  using S = typename Derived::Scalar;
  const Index n = x.cols();
  Points<S> g = Points<S>::Zero(3, n);
  auto add_edge = [&](Index i, Index j) {
    const Vec3<S> d = x.col(i) - x.col(j);
    g.col(i) += S(2) * d;
    g.col(j) -= S(2) * d;
  };
  if (tet) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) add_edge(i, j);
  } else {
    for (Index i = 0; i < n; ++i) add_edge((i + 1) % n, i);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Polygons

/// Mean ratio of a triangle, area / (c_mr lambda). For n-gons the same
/// quotient with the n-gon constant.
template <typename Derived>
typename Derived::Scalar mean_ratio(const Eigen::MatrixBase<Derived>& x,
                                    const AreaFrame<typename Derived::Scalar>& frame) {
  using S = typename Derived::Scalar;
  const S lam = lambda_edges(x);
  if (!(lam > S(0))) throw SingularityError("mean_ratio: all vertices coincide");
  return signed_area(x, frame) / (S(norm::c_mr(x.cols())) * lam);
}

template <typename Derived>
Points<typename Derived::Scalar> grad_mean_ratio(const Eigen::MatrixBase<Derived>& x,
                                                 const AreaFrame<typename Derived::Scalar>& frame) {
  using S = typename Derived::Scalar;
  const S lam = lambda_edges(x);
  if (!(lam > S(0))) throw SingularityError("grad_mean_ratio: all vertices coincide");
  const S c = S(norm::c_mr(x.cols()));
  const S area = signed_area(x, frame);
  return (grad_signed_area(x, frame) * lam - area * grad_lambda_edges(x)) / (c * lam * lam);
}

/// area / (c_iq2(n) perim^2); 1 on regular n-gons.
template <typename Derived>
typename Derived::Scalar iq2(const Eigen::MatrixBase<Derived>& x, const AreaFrame<typename Derived::Scalar>& frame) {
  using S = typename Derived::Scalar;
  const S p = perimeter(x);
  if (!(p > S(0))) throw SingularityError("iq2: zero perimeter");
  return signed_area(x, frame) / (S(norm::c_iq2(x.cols())) * p * p);
}

template <typename Derived>
Points<typename Derived::Scalar> grad_iq2(const Eigen::MatrixBase<Derived>& x,
                                          const AreaFrame<typename Derived::Scalar>& frame) {
  using S = typename Derived::Scalar;
  const S p = perimeter(x);
  if (!(p > S(0))) throw SingularityError("grad_iq2: zero perimeter");
  const S c = S(norm::c_iq2(x.cols()));
  const S area = signed_area(x, frame);
  // d(A/(c p^2)) = dA/(c p^2) - 2 A dp/(c p^3)
  return grad_signed_area(x, frame) / (c * p * p) - (S(2) * area / (c * p * p * p)) * grad_perimeter(x);
}

enum class Q2Variant { Perimeter, Lambda };

/// area - w C perim^2 (Perimeter) or area - w C lambda (Lambda); zero on the
/// regular polygon for w = 1.
template <typename Derived>
typename Derived::Scalar q2_element(const Eigen::MatrixBase<Derived>& x,
                                    const AreaFrame<typename Derived::Scalar>& frame,
                                    Q2Variant variant = Q2Variant::Perimeter, typename Derived::Scalar w = 1) {
  using S = typename Derived::Scalar;
  const Index n = x.cols();
  if (variant == Q2Variant::Perimeter) {
    const S p = perimeter(x);
    return signed_area(x, frame) - w * S(norm::c_iq2(n)) * p * p;
  }
  return signed_area(x, frame) - w * S(norm::c_mr(n)) * lambda_edges(x);
}

/// Gradient of the subtracted term alone: C perim^2 or C lambda.
template <typename Derived>
Points<typename Derived::Scalar> grad_q2_penalty(const Eigen::MatrixBase<Derived>& x, Q2Variant variant) {
  using S = typename Derived::Scalar;
  const Index n = x.cols();
  if (variant == Q2Variant::Perimeter)
    return (S(2) * S(norm::c_iq2(n)) * perimeter(x)) * grad_perimeter(x);
  return S(norm::c_mr(n)) * grad_lambda_edges(x);
}

template <typename Derived>
typename Derived::Scalar q2_penalty(const Eigen::MatrixBase<Derived>& x, Q2Variant variant) {
  using S = typename Derived::Scalar;
  const Index n = x.cols();
  if (variant == Q2Variant::Perimeter) {
    const S p = perimeter(x);
    return S(norm::c_iq2(n)) * p * p;
  }
  return S(norm::c_mr(n)) * lambda_edges(x);
}

template <typename Derived>
Points<typename Derived::Scalar> grad_q2_element(const Eigen::MatrixBase<Derived>& x,
                                                 const AreaFrame<typename Derived::Scalar>& frame,
                                                 Q2Variant variant = Q2Variant::Perimeter,
                                                 typename Derived::Scalar w = 1) {
  return grad_signed_area(x, frame) - w * grad_q2_penalty(x, variant);
}

// ---------------------------------------------------------------------------
// Tetrahedra

namespace detail {

/// Face opposite vertex i.
template <typename Derived>
Points<typename Derived::Scalar, 3> opposite_face(const Eigen::MatrixBase<Derived>& x, int i) {
  static constexpr int faces[4][3] = {{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}};
  Points<typename Derived::Scalar, 3> f;
  for (int k = 0; k < 3; ++k) f.col(k) = x.col(faces[i][k]);
  return f;
}

template <typename S>
void scatter_face(Points<S, 4>& g, int i, const Points<S, 3>& gf) {
  static constexpr int faces[4][3] = {{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}};
  for (int k = 0; k < 3; ++k) g.col(faces[i][k]) += gf.col(k);
}

}  // namespace detail

/// Total boundary area of a tetrahedron.
template <typename Derived>
typename Derived::Scalar tet_surface_area(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  S a = 0;
  for (int i = 0; i < 4; ++i) a += tri_area(detail::opposite_face(x, i));
  return a;
}

template <typename Derived>
Points<typename Derived::Scalar, 4> grad_tet_surface_area(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  Points<S, 4> g = Points<S, 4>::Zero();
  for (int i = 0; i < 4; ++i) detail::scatter_face<S>(g, i, grad_tri_area(detail::opposite_face(x, i)));
  return g;
}

/// Tetrahedral mean ratio 12 (3|vol|)^(2/3) / sum l^2, carrying the sign of vol.
template <typename Derived>
typename Derived::Scalar mean_ratio_tet(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const S lam = lambda_edges(x, true);
  if (!(lam > S(0))) throw SingularityError("mean_ratio_tet: all vertices coincide");
  const S vol = tet_volume(x);
  const S mag = S(12) * std::pow(S(3) * std::abs(vol), S(2) / S(3)) / lam;
  return vol < S(0) ? -mag : mag;
}

template <typename Derived>
Points<typename Derived::Scalar, 4> grad_mean_ratio_tet(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const S lam = lambda_edges(x, true);
  if (!(lam > S(0))) throw SingularityError("grad_mean_ratio_tet: all vertices coincide");
  const S vol = tet_volume(x);
  if (vol == S(0)) throw SingularityError("grad_mean_ratio_tet: flat tetrahedron");
  // m = 12 * 3^(2/3) * s(vol) / lam with s(v) = sign(v)|v|^(2/3), s'(v) = (2/3)|v|^(-1/3)
  const S k = S(12) * std::pow(S(3), S(2) / S(3));
  const S av = std::abs(vol);
  const S s = (vol < S(0) ? -S(1) : S(1)) * std::pow(av, S(2) / S(3));
  const S ds = S(2) / S(3) * std::pow(av, -S(1) / S(3));
  const Points<S> glam = grad_lambda_edges(x, true);
  return (k / lam) * ds * grad_tet_volume(x) - (k * s / (lam * lam)) * glam;
}

/// vol / (c_iq3 area^(3/2)); 1 on the regular tet, sign of vol.
template <typename Derived>
typename Derived::Scalar iq3(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const S a = tet_surface_area(x);
  if (!(a > S(0))) throw SingularityError("iq3: zero boundary area");
  return tet_volume(x) / (S(norm::c_iq3_tet()) * std::pow(a, S(1.5)));
}

template <typename Derived>
Points<typename Derived::Scalar, 4> grad_iq3(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const S a = tet_surface_area(x);
  if (!(a > S(0))) throw SingularityError("grad_iq3: zero boundary area");
  const S c = S(norm::c_iq3_tet());
  const S vol = tet_volume(x);
  const S a32 = std::pow(a, S(1.5));
  return grad_tet_volume(x) / (c * a32) - (S(1.5) * vol / (c * a32 * a)) * grad_tet_surface_area(x);
}

/// Degree-3 homogeneous "perimeter" measures of a tetrahedron:
///   1: sum area(face) perim(face)      2: sum area(face)^(3/2)
///   3: (sum_{i<j} |xi - xj|^2)^(3/2)   4: sum_{i<j} |xi - xj|^3
///   5: (total face area)^(3/2)
template <typename Derived>
typename Derived::Scalar lambda_variant(const Eigen::MatrixBase<Derived>& x, int i) {
  using S = typename Derived::Scalar;
  detail::require_columns(x, 4, "lambda_variant");
  S sum = 0;
  switch (i) {
    case 1:
      for (int k = 0; k < 4; ++k) {
        const auto f = detail::opposite_face(x, k);
        sum += tri_area(f) * perimeter(f);
      }
      return sum;
    case 2:
      for (int k = 0; k < 4; ++k) sum += std::pow(tri_area(detail::opposite_face(x, k)), S(1.5));
      return sum;
    case 3:
      return std::pow(lambda_edges(x, true), S(1.5));
    case 4:
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) sum += std::pow((x.col(a) - x.col(b)).norm(), S(3));
      return sum;
    case 5:
      return std::pow(tet_surface_area(x), S(1.5));
    default:
      throw ArgumentError("lambda variant must be in 1..5");
  }
}

template <typename Derived>
Points<typename Derived::Scalar, 4> grad_lambda_variant(const Eigen::MatrixBase<Derived>& x, int i) {
  using S = typename Derived::Scalar;
  detail::require_columns(x, 4, "grad_lambda_variant");
  Points<S, 4> g = Points<S, 4>::Zero();
  switch (i) {
    case 1:
      for (int k = 0; k < 4; ++k) {
        const auto f = detail::opposite_face(x, k);
        const Points<S, 3> gf = perimeter(f) * grad_tri_area(f) + tri_area(f) * Points<S, 3>(grad_perimeter(f));
        detail::scatter_face<S>(g, k, gf);
      }
      return g;
    case 2:
      for (int k = 0; k < 4; ++k) {
        const auto f = detail::opposite_face(x, k);
        detail::scatter_face<S>(g, k, (S(1.5) * std::sqrt(tri_area(f))) * grad_tri_area(f));
      }
      return g;
    case 3: {
      const S lam = lambda_edges(x, true);
      return (S(1.5) * std::sqrt(lam)) * Points<S, 4>(grad_lambda_edges(x, true));
    }
    case 4:
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          if (a == b) continue;
          const Vec3<S> d = x.col(a) - x.col(b);
          g.col(a) += S(3) * d.norm() * d;
        }
      return g;
    case 5:
      return (S(1.5) * std::sqrt(tet_surface_area(x))) * grad_tet_surface_area(x);
    default:
      throw ArgumentError("lambda variant must be in 1..5");
  }
}

/// vol - w lambda_i / c_lambda(i); zero on the regular tet for w = 1.
/// Variant 5 is q3 = vol - C^-1 area^(3/2).
template <typename Derived>
typename Derived::Scalar q3_element(const Eigen::MatrixBase<Derived>& x, int variant = 5,
                                    typename Derived::Scalar w = 1) {
  using S = typename Derived::Scalar;
  return tet_volume(x) - w * lambda_variant(x, variant) / S(norm::c_lambda(variant));
}

template <typename Derived>
Points<typename Derived::Scalar, 4> grad_q3_element(const Eigen::MatrixBase<Derived>& x, int variant = 5,
                                                    typename Derived::Scalar w = 1) {
  using S = typename Derived::Scalar;
  return grad_tet_volume(x) - (w / S(norm::c_lambda(variant))) * grad_lambda_variant(x, variant);
}

}  // namespace meshopt
