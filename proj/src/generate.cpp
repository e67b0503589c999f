#include "meshopt/generate.hpp"

#include "meshopt/geometry.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace meshopt {

namespace {

void require_n(int n) {
  if (n < 2) throw ArgumentError("generator size n must be >= 2");
}

Index grid_index(int n, int i, int j) { return static_cast<Index>(j) * (n + 1) + i; }

Points3d square_points(int n) {
  Points3d x = Points3d::Zero(3, static_cast<Index>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      x(0, grid_index(n, i, j)) = static_cast<double>(i) / n;
      x(1, grid_index(n, i, j)) = static_cast<double>(j) / n;
    }
  return x;
}

void add_cell_triangles(std::vector<ElementRef>& out, int n, int i, int j) {
  const Index a = grid_index(n, i, j), b = grid_index(n, i + 1, j);
  const Index c = grid_index(n, i + 1, j + 1), d = grid_index(n, i, j + 1);
  out.push_back(ElementRef::triangle(a, b, c));
  out.push_back(ElementRef::triangle(a, c, d));
}

Mesh finish(Mesh m) {
  m.fix_boundary();
  return m;
}

}  // namespace

Mesh square_tri(int n) {
  require_n(n);
  std::vector<ElementRef> el;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) add_cell_triangles(el, n, i, j);
  return finish(Mesh(2, square_points(n), std::move(el)));
}

Mesh square_mixed(int n) {
  require_n(n);
  std::vector<ElementRef> el;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (2 * i < n)
        el.push_back(ElementRef::quad(grid_index(n, i, j), grid_index(n, i + 1, j), grid_index(n, i + 1, j + 1),
                                      grid_index(n, i, j + 1)));
      else
        add_cell_triangles(el, n, i, j);
    }
  return finish(Mesh(2, square_points(n), std::move(el)));
}

Mesh disk_tri(int n) {
  require_n(n);
  // Ring r holds 6r vertices, starting at index 1 + 3r(r-1).
  auto ring_start = [](int r) -> Index { return r == 0 ? 0 : 1 + 3 * static_cast<Index>(r) * (r - 1); };
  auto ring_vertex = [&](int r, Index k) -> Index { return r == 0 ? 0 : ring_start(r) + k % (6 * r); };

  Points3d x = Points3d::Zero(3, 1 + 3 * static_cast<Index>(n) * (n + 1));
  for (int r = 1; r <= n; ++r)
    for (int k = 0; k < 6 * r; ++k) {
      const double t = 2.0 * std::numbers::pi * k / (6.0 * r);
      x(0, ring_vertex(r, k)) = static_cast<double>(r) / n * std::cos(t);
      x(1, ring_vertex(r, k)) = static_cast<double>(r) / n * std::sin(t);
    }

  std::vector<ElementRef> el;
  for (int r = 1; r <= n; ++r)
    for (int s = 0; s < 6; ++s)
      for (int i = 0; i < r; ++i) {
        const Index in0 = ring_vertex(r - 1, static_cast<Index>(r - 1) * s + i);
        const Index in1 = ring_vertex(r - 1, static_cast<Index>(r - 1) * s + i + 1);
        const Index out0 = ring_vertex(r, static_cast<Index>(r) * s + i);
        const Index out1 = ring_vertex(r, static_cast<Index>(r) * s + i + 1);
        el.push_back(ElementRef::triangle(in0, out0, out1));
        if (i + 1 < r) el.push_back(ElementRef::triangle(in0, out1, in1));
      }

  Mesh m = finish(Mesh(2, std::move(x), std::move(el)));
  for (Index v = ring_start(n); v < m.num_vertices(); ++v) m.set_geometry_tag(v, 0);
  return m;
}

Mesh ball_tet(int n) {
  require_n(n);
  const auto idx = [n](int i, int j, int k) -> Index { return (static_cast<Index>(k) * (n + 1) + j) * (n + 1) + i; };
  Points3d cube(3, static_cast<Index>(n + 1) * (n + 1) * (n + 1));
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        cube.col(idx(i, j, k)) = Vec3d(2.0 * i / n - 1, 2.0 * j / n - 1, 2.0 * k / n - 1);

  // Six tetrahedra per cell along the monotone paths 000 -> 111.
  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<ElementRef> el;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (const auto& p : perms) {
          std::array<int, 3> c{i, j, k};
          std::array<Index, 4> v{};
          v[0] = idx(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            ++c[static_cast<std::size_t>(p[static_cast<std::size_t>(s)])];
            v[static_cast<std::size_t>(s) + 1] = idx(c[0], c[1], c[2]);
          }
          Points<double, 4> corners;
          for (int s = 0; s < 4; ++s) corners.col(s) = cube.col(v[static_cast<std::size_t>(s)]);
          if (tet_volume(corners) < 0) std::swap(v[2], v[3]);
          el.push_back(ElementRef::tet(v[0], v[1], v[2], v[3]));
        }

  Points3d x = cube;
  for (Index v = 0; v < x.cols(); ++v) {
    const double r2 = cube.col(v).norm();
    if (r2 > 0) x.col(v) *= cube.col(v).lpNorm<Eigen::Infinity>() / r2;
  }
  Mesh m = finish(Mesh(3, std::move(x), std::move(el)));
  for (Index v = 0; v < m.num_vertices(); ++v)
    if (m.is_fixed(v)) m.set_geometry_tag(v, 0);
  return m;
}

Mesh perturbed(const Mesh& m, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0)) throw ArgumentError("sigma must be non-negative");
  Mesh out = m;
  if (sigma == 0) return out;
  const auto edges = m.edges();
  double h = 0;
  for (auto [a, b] : edges) h += (m.point(a) - m.point(b)).norm();
  if (!edges.empty()) h /= static_cast<double>(edges.size());

  std::mt19937_64 rng(seed);
  // 53 random bits mapped to [-1, 1); independent of the standard library's
  // distribution implementations.
  auto uniform = [&rng] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
  const int dims = m.is_planar() ? 2 : 3;
  for (Index v = 0; v < m.num_vertices(); ++v) {
    if (m.is_fixed(v)) continue;
    for (int c = 0; c < dims; ++c) out.points()(c, v) += sigma * h * uniform();
  }
  return out;
}

Mesh generate(std::string_view kind, int n) {
  if (kind == "square_tri") return square_tri(n);
  if (kind == "square_mixed") return square_mixed(n);
  if (kind == "disk_tri") return disk_tri(n);
  if (kind == "ball_tet") return ball_tet(n);
  throw ArgumentError("unknown generator '" + std::string(kind) + "'");
}

}  // namespace meshopt
