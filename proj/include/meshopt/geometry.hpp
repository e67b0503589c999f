#pragma once

// Signed geometric primitives and their closed-form gradients.
//
// Every function takes vertex coordinates as a 3xN Eigen expression (one
// column per vertex) and is templated on the scalar type. Planar data lives
// in the z = 0 plane; the *_signed2d variants use the xy determinant so that
// clockwise elements come out negative.

#include "meshopt/types.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <span>
#include <vector>

namespace meshopt {

enum class Ambient { Planar, Space };
enum class Link { Open, Closed };

namespace detail {

template <typename Derived>
using PlainOf = typename Derived::PlainObject;

template <typename Derived>
void require_columns(const Eigen::MatrixBase<Derived>& x, Index cols, const char* what) {
  if (x.cols() != cols) throw ArgumentError(std::string(what) + ": expected " + std::to_string(cols) + " vertices");
}

}  // namespace detail

/// nu(a, b, c) = (b - a) x (c - a)
template <typename S>
Vec3<S> tri_normal(const Vec3<S>& a, const Vec3<S>& b, const Vec3<S>& c) {
  return (b - a).cross(c - a);
}

/// (1/6) ((x2 - x1) x (x3 - x1)) . (x4 - x1); positive for positively oriented tets.
template <typename Derived>
typename Derived::Scalar tet_volume(const Eigen::MatrixBase<Derived>& x) {
  detail::require_columns(x, 4, "tet_volume");
  using S = typename Derived::Scalar;
  const Vec3<S> a = x.col(1) - x.col(0);
  const Vec3<S> b = x.col(2) - x.col(0);
  const Vec3<S> c = x.col(3) - x.col(0);
  return a.cross(b).dot(c) / S(6);
}

/// Unsigned triangle area 1/2 |nu|.
template <typename Derived>
typename Derived::Scalar tri_area(const Eigen::MatrixBase<Derived>& x) {
  detail::require_columns(x, 3, "tri_area");
  using S = typename Derived::Scalar;
  const Vec3<S> a = x.col(0), b = x.col(1), c = x.col(2);
  return tri_normal<S>(a, b, c).norm() / S(2);
}

/// 1/2 det(x2 - x1, x3 - x1) on the xy coordinates.
template <typename Derived>
typename Derived::Scalar tri_area_signed2d(const Eigen::MatrixBase<Derived>& x) {
  detail::require_columns(x, 3, "tri_area_signed2d");
  using S = typename Derived::Scalar;
  const S ux = x(0, 1) - x(0, 0), uy = x(1, 1) - x(1, 0);
  const S vx = x(0, 2) - x(0, 0), vy = x(1, 2) - x(1, 0);
  return (ux * vy - uy * vx) / S(2);
}

/// nu(1..n) = x1 x x2 + x2 x x3 + ... + xn x x1, the normal of a closed curve.
/// Evaluated in the translation-invariant fan form sum_j (xj - x1) x (xj+1 - x1).
template <typename Derived>
Vec3<typename Derived::Scalar> polygon_normal(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const Index n = x.cols();
  if (n < 3) throw ArgumentError("polygon_normal: need at least 3 vertices");
  Vec3<S> nu = Vec3<S>::Zero();
  const Vec3<S> origin = x.col(0);
  for (Index j = 1; j + 1 < n; ++j) nu += (x.col(j) - origin).cross(x.col(j + 1) - origin);
  return nu;
}

/// 1/2 |nu(1..n)|
template <typename Derived>
typename Derived::Scalar polygon_area(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  return polygon_normal(x).norm() / S(2);
}

/// Shoelace area on the xy coordinates, negative for clockwise polygons.
template <typename Derived>
typename Derived::Scalar polygon_area_signed2d(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const Index n = x.cols();
  if (n < 3) throw ArgumentError("polygon_area_signed2d: need at least 3 vertices");
  S twice = 0;
  for (Index i = 0; i < n; ++i) {
    const Index j = (i + 1) % n;
    twice += (x(0, i) - x(0, 0)) * (x(1, j) - x(1, 0)) - (x(1, i) - x(1, 0)) * (x(0, j) - x(0, 0));
  }
  return twice / S(2);
}

/// Sum of cyclic edge lengths.
template <typename Derived>
typename Derived::Scalar perimeter(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const Index n = x.cols();
  if (n < 2) throw ArgumentError("perimeter: need at least 2 vertices");
  S sum = 0;
  for (Index i = 0; i < n; ++i) sum += (x.col((i + 1) % n) - x.col(i)).norm();
  return sum;
}

/// (1/6)(nu(4,3,2), nu(4,1,3), nu(4,2,1), nu(1,2,3))
template <typename Derived>
Points<typename Derived::Scalar, 4> grad_tet_volume(const Eigen::MatrixBase<Derived>& x) {
  detail::require_columns(x, 4, "grad_tet_volume");
  using S = typename Derived::Scalar;
  const Vec3<S> x1 = x.col(0), x2 = x.col(1), x3 = x.col(2), x4 = x.col(3);
  Points<S, 4> g;
  g.col(0) = tri_normal<S>(x4, x3, x2);
  g.col(1) = tri_normal<S>(x4, x1, x3);
  g.col(2) = tri_normal<S>(x4, x2, x1);
  g.col(3) = tri_normal<S>(x1, x2, x3);
  return g / S(6);
}

/// Gradient of the unsigned area 1/2 |nu(1..n)| of a closed polygon:
/// component i is 1/2 (x_{i+1} - x_{i-1}) x nu/|nu|. For triangles this is
/// 1/2 ((x2 - x3) x n, (x3 - x1) x n, (x1 - x2) x n).
template <typename Derived>
Points<typename Derived::Scalar> grad_polygon_area(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const Index n = x.cols();
  const Vec3<S> nu = polygon_normal(x);
  const S len = nu.norm();
  if (!(len > S(0))) throw SingularityError("grad_polygon_area: degenerate polygon (zero normal)");
  const Vec3<S> unit = nu / len;
  Points<S> g(3, n);
  for (Index i = 0; i < n; ++i) {
    const Vec3<S> next = x.col((i + 1) % n), prev = x.col((i + n - 1) % n);
    g.col(i) = (next - prev).cross(unit) / S(2);
  }
  return g;
}

template <typename Derived>
Points<typename Derived::Scalar, 3> grad_tri_area(const Eigen::MatrixBase<Derived>& x) {
  detail::require_columns(x, 3, "grad_tri_area");
  return grad_polygon_area(x);
}

/// Gradient of the signed xy area; never singular. The z rows are zero.
template <typename Derived>
Points<typename Derived::Scalar> grad_polygon_area_signed2d(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const Index n = x.cols();
  if (n < 3) throw ArgumentError("grad_polygon_area_signed2d: need at least 3 vertices");
  Points<S> g = Points<S>::Zero(3, n);
  for (Index i = 0; i < n; ++i) {
    const Index next = (i + 1) % n, prev = (i + n - 1) % n;
    // (next - prev) x e_z
    g(0, i) = (x(1, next) - x(1, prev)) / S(2);
    g(1, i) = -(x(0, next) - x(0, prev)) / S(2);
  }
  return g;
}

/// Component i: (x_i - x_{i-1})/|.| + (x_i - x_{i+1})/|.|
template <typename Derived>
Points<typename Derived::Scalar> grad_perimeter(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const Index n = x.cols();
  if (n < 2) throw ArgumentError("grad_perimeter: need at least 2 vertices");
  Points<S> g = Points<S>::Zero(3, n);
  for (Index i = 0; i < n; ++i) {
    const Index j = (i + 1) % n;
    const Vec3<S> e = x.col(j) - x.col(i);
    const S len = e.norm();
    if (!(len > S(0))) throw SingularityError("grad_perimeter: coincident adjacent vertices");
    g.col(i) -= e / len;
    g.col(j) += e / len;
  }
  return g;
}

/// grad |x|^n = n x |x|^(n-2)
template <typename Derived>
detail::PlainOf<Derived> grad_norm_pow(const Eigen::MatrixBase<Derived>& x, typename Derived::Scalar n) {
  using S = typename Derived::Scalar;
  const S len = x.norm();
  if (len == S(0)) {
    if (n < S(2)) throw SingularityError("grad_norm_pow: zero vector with exponent < 2");
    return detail::PlainOf<Derived>::Zero(x.rows(), x.cols());
  }
  return (n * std::pow(len, n - S(2))) * x;
}

/// Derivative of the area enclosed by (x0, x1, ..., xn) with respect to x0,
/// where (x1..xn) is the link of x0. For an open link (x0 on a boundary
/// curve) this is 1/2 (x1 - xn) x nu(0,1,n)/|nu(0,1,n)|, with nu(0,1,n)
/// flipped to agree with the normal of (x0, link); planar meshes use
/// e_z as the unit normal so collinear boundary nodes stay well defined. For
/// a closed link the planar derivative vanishes and the space case sums the
/// fan triangle gradients.
template <typename S, typename Derived>
Vec3<S> grad_area_boundary_node(const Vec3<S>& x0, const Eigen::MatrixBase<Derived>& link, Ambient ambient,
                                Link kind = Link::Open) {
  const Index n = link.cols();
  if (n < 2) throw ArgumentError("grad_area_boundary_node: link needs at least 2 vertices");
  if (kind == Link::Closed) {
    if (ambient == Ambient::Planar) return Vec3<S>::Zero();
    Vec3<S> g = Vec3<S>::Zero();
    for (Index i = 0; i < n; ++i) {
      Points<S, 3> tri;
      tri << x0, link.col(i), link.col((i + 1) % n);
      g += grad_tri_area(tri).col(0);
    }
    return g;
  }
  const Vec3<S> first = link.col(0), last = link.col(n - 1);
  Vec3<S> unit = Vec3<S>::UnitZ();
  if (ambient == Ambient::Space) {
    const Vec3<S> nu = tri_normal<S>(x0, first, last);
    const S len = nu.norm();
    if (!(len > S(0))) throw SingularityError("grad_area_boundary_node: degenerate nu(0,1,n)");
    unit = nu / len;
    // At a reflex node nu(0,1,n) points against the patch; orient it by the
    // normal of the whole polygon (x0, link).
    Points<S> poly(3, n + 1);
    poly << x0, link;
    if (polygon_normal(poly).dot(unit) < S(0)) unit = -unit;
  }
  return (first - last).cross(unit) / S(2);
}

namespace detail {

/// nu over a 1-based index subsequence of a face.
template <typename S, typename Derived>
Vec3<S> face_nu(const Eigen::MatrixBase<Derived>& f, std::initializer_list<int> idx) {
  Points<S> sub(3, static_cast<Index>(idx.size()));
  Index k = 0;
  for (int i : idx) sub.col(k++) = f.col(i - 1);
  return polygon_normal(sub);
}

}  // namespace detail

/// Contribution c_n of one boundary face to 6 * grad vol at its free node.
/// The face is listed (x1, ..., xn) with x1 the free node; each c_n averages
/// the fan normals over all triangulations of the face (Catalan count).
template <typename S, typename Derived>
Vec3<S> face_volume_contribution(const Eigen::MatrixBase<Derived>& f) {
  using detail::face_nu;
  switch (f.cols()) {
    case 3:
      return face_nu<S>(f, {1, 2, 3});
    case 4:
      return (face_nu<S>(f, {1, 2, 4}) + face_nu<S>(f, {1, 2, 3, 4})) / S(2);
    case 5:
      return (S(2) * face_nu<S>(f, {1, 2, 5}) + face_nu<S>(f, {1, 2, 3, 5}) + face_nu<S>(f, {1, 2, 4, 5}) +
              face_nu<S>(f, {1, 2, 3, 4, 5})) /
             S(5);
    case 6:
      // 14 triangulations: weight = product of Catalan numbers of the gaps
      // between consecutive fan neighbours of x1.
      return (S(5) * face_nu<S>(f, {1, 2, 6}) + S(2) * face_nu<S>(f, {1, 2, 3, 6}) + face_nu<S>(f, {1, 2, 4, 6}) +
              S(2) * face_nu<S>(f, {1, 2, 5, 6}) + face_nu<S>(f, {1, 2, 3, 4, 6}) + face_nu<S>(f, {1, 2, 3, 5, 6}) +
              face_nu<S>(f, {1, 2, 4, 5, 6}) + face_nu<S>(f, {1, 2, 3, 4, 5, 6})) /
             S(14);
    default:
      break;
  }
  if (f.cols() < 3) throw ArgumentError("face_volume_contribution: face needs at least 3 vertices");
  throw UnsupportedError("face_volume_contribution: faces with more than 6 vertices are not supported");
}

/// Gradient of the enclosed volume with respect to a boundary node x0 that is
/// the only free variable. Each face is listed with x0 in column 0 and
/// outward orientation. For an all-triangle star this reduces to
/// (1/6) nu(link).
template <typename S>
Vec3<S> grad_vol_boundary_node(std::span<const Points<S>> faces) {
  Vec3<S> g = Vec3<S>::Zero();
  for (const auto& f : faces) g += face_volume_contribution<S>(f);
  return g / S(6);
}

}  // namespace meshopt
