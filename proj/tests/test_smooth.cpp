#include "doctest.h"
#include "fd.hpp"

#include "meshopt/generate.hpp"
#include "meshopt/smooth.hpp"

#include <numeric>

using namespace meshopt;

namespace {

// Two triangles sharing edge (1, 3); vertex 3 is the only free vertex.
Mesh two_triangles(const Vec3d& a, const Vec3d& b, const Vec3d& c, const Vec3d& p) {
  Points3d x(3, 4);
  x << a, b, c, p;
  Mesh m(2, x, {ElementRef::triangle(0, 1, 3), ElementRef::triangle(1, 2, 3)});
  m.set_fixed_mask({true, true, true, false});
  return m;
}

// square_tri(n) with only the centre vertex free.
Mesh one_free(int n, const Vec3d& offset) {
  Mesh m = square_tri(n);
  std::vector<bool> fixed(static_cast<std::size_t>(m.num_vertices()), true);
  const Index c = (n / 2) * (n + 1) + n / 2;
  fixed[static_cast<std::size_t>(c)] = false;
  m.set_fixed_mask(fixed);
  m.points().col(c) += offset;
  return m;
}

Vec3d centroid_of(const Mesh& m, const std::vector<Index>& vs) {
  Vec3d s = Vec3d::Zero();
  for (Index v : vs) s += m.point(v);
  return s / static_cast<double>(vs.size());
}

}  // namespace

TEST_CASE("projection targets") {
  CHECK(project(ImplicitCircle{}, Vec3d(2, 0, 0)).isApprox(Vec3d(1, 0, 0)));
  CHECK(project(ImplicitCircle{{1, 1}, 2}, Vec3d(1, 4, 0)).isApprox(Vec3d(1, 3, 0)));
  CHECK(project(ImplicitCircle{}, Vec3d(0, 0, 0)).isApprox(Vec3d(1, 0, 0)));
  CHECK(project(ImplicitSphere{}, Vec3d(0, 0, 3)).isApprox(Vec3d(0, 0, 1)));
  CHECK(project(FixedPoint{Vec3d(4, 5, 6)}, Vec3d(0, 0, 0)) == Vec3d(4, 5, 6));

  const Polyline2D square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true};
  CHECK(project(square, Vec3d(0.5, -0.3, 0)).isApprox(Vec3d(0.5, 0, 0)));
  CHECK(project(square, Vec3d(-0.2, 0.5, 0)).isApprox(Vec3d(0, 0.5, 0)));
  CHECK(project(square, Vec3d(2, 2, 0)).isApprox(Vec3d(1, 1, 0)));
  const Polyline2D open{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, false};
  CHECK(project(open, Vec3d(-0.2, 0.3, 0)).isApprox(Vec3d(0, 0, 0)));
  CHECK(project(square, Vec3d(-0.2, 0.3, 0)).isApprox(Vec3d(0, 0.3, 0)));

  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const Vec3d p = 3 * test::random_points(rng, 1, true).col(0);
    for (const Geometry& g : std::vector<Geometry>{ImplicitCircle{}, square, ImplicitSphere{}}) {
      const Vec3d once = project(g, p);
      CHECK((project(g, once) - once).norm() < 1e-12);
    }
  }
}

TEST_CASE("laplacian moves a vertex to its neighbour average") {
  Mesh m = one_free(4, Vec3d(0.2, -0.15, 0));
  const Index c = 12;
  const Vec3d want = centroid_of(m, vertex_star(m, c));
  laplace_step(m);
  CHECK((m.point(c) - want).norm() < 1e-15);
  CHECK(laplace_step(m) < 1e-15);
}

TEST_CASE("laplacian sweeps never increase the edge energy") {
  Mesh m = perturbed(square_tri(8), 0.4, 2);
  const QualityFn lam(QualityKind::LambdaEdges);
  double prev = mesh_quality(m, lam);
  for (int i = 0; i < 20; ++i) {
    laplace_step(m);
    const double now = mesh_quality(m, lam);
    CHECK(now <= prev + 1e-12);
    prev = now;
  }
}

TEST_CASE("weighted laplacian uses summed C_e per edge") {
  // square_mixed(2): quads in the left column, triangles on the right.
  Mesh m = square_mixed(2);
  std::vector<bool> fixed(9, true);
  fixed[4] = false;
  m.set_fixed_mask(fixed);
  m.points().col(4) += Vec3d(0.1, 0.2, 0);
  const double q = 0.5, t = std::sqrt(3.0) / 6;
  CHECK(norm::c_e(4) == doctest::Approx(q));
  CHECK(norm::c_e(3) == doctest::Approx(0.2887).epsilon(1e-4));
  const std::vector<std::pair<Index, double>> w{{1, q + t}, {3, 2 * q}, {5, 2 * t}, {7, q + t}, {8, 2 * t}};
  Vec3d want = Vec3d::Zero();
  double total = 0;
  for (auto [v, wv] : w) {
    want += wv * m.point(v);
    total += wv;
  }
  want /= total;
  laplace_weighted_step(m);
  CHECK((m.point(4) - want).norm() < 1e-14);
}

TEST_CASE("weighted and plain laplacian agree on triangle meshes") {
  Mesh a = perturbed(square_tri(6), 0.3, 7), b = a;
  for (int i = 0; i < 5; ++i) {
    laplace_step(a);
    laplace_weighted_step(b);
  }
  CHECK(a.points() == b.points());
}

TEST_CASE("jacobi and gauss-seidel laplacians share the fixed point") {
  Mesh a = perturbed(square_tri(6), 0.3, 8), b = a;
  for (int i = 0; i < 2000; ++i) {
    laplace_step(a, Schedule::GaussSeidel);
    laplace_step(b, Schedule::Jacobi);
  }
  CHECK((a.points() - b.points()).norm() < 1e-9);
}

TEST_CASE("edge energy descent with rho = 1/|V| reproduces the laplacian") {
  for (int n : {4, 6}) {
    Mesh grad = one_free(n, Vec3d(0.13, 0.07, 0)), lap = grad;
    SmoothConfig cfg;
    cfg.quality = QualityFn(QualityKind::LambdaEdges);
    cfg.step_rho = 1.0 / static_cast<double>(vertex_star(grad, (n / 2) * (n + 1) + n / 2).size());
    const StepResult r = gradient_ascent_step(grad, cfg.quality, cfg);
    CHECK(r.step == doctest::Approx(cfg.step_rho));
    laplace_step(lap);
    CHECK((grad.points() - lap.points()).norm() < 1e-14);
  }
}

TEST_CASE("scale invariant directions") {
  GradVec g = GradVec::Zero(3, 2);
  g(0, 0) = 4;
  CHECK(scale_invariant_direction(g).norm() == doctest::Approx(2));
  CHECK(scale_invariant_direction(GradVec::Zero(3, 3)).isZero(0));

  const Mesh m = perturbed(square_tri(4), 0.3, 1);
  const auto parts = element_gradients(m, QualityFn(QualityKind::Q2));
  const GradVec d = scale_invariant_direction(m, parts, free_mask(m));
  for (Index v = 0; v < m.num_vertices(); ++v)
    if (m.is_fixed(v)) CHECK(d.col(v).isZero(0));
  // Quadrupling the geometry doubles each element gradient of Q2 (degree 1),
  // so the normalized direction grows by sqrt(4).
  Mesh big = m;
  big.points() *= 4;
  const GradVec dbig = scale_invariant_direction(big, element_gradients(big, QualityFn(QualityKind::Q2)), free_mask(m));
  CHECK((dbig - 2 * d).norm() < 1e-12 * (1 + d.norm()));
}

TEST_CASE("gradient ascent is monotone and leaves fixed vertices alone") {
  for (QualityKind k : {QualityKind::Q2, QualityKind::MeanRatio, QualityKind::Iq2, QualityKind::LambdaEdges}) {
    CAPTURE(to_string(k));
    Mesh m = perturbed(square_tri(6), 0.3, 3);
    const Points3d before = m.points();
    SmoothConfig cfg;
    cfg.quality = QualityFn(k);
    cfg.max_iters = 50;
    const SmoothResult r = smooth(m, cfg);
    const double s = sense(k) == Sense::Maximize ? 1.0 : -1.0;
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(s * r.trace[i] >= s * r.trace[i - 1] - 1e-12);
    for (Index v = 0; v < m.num_vertices(); ++v)
      if (m.is_fixed(v)) CHECK(m.point(v) == before.col(v));
  }
}

TEST_CASE("normalized directions reach the same optimum") {
  const Mesh start = one_free(4, Vec3d(0.3, -0.2, 0));
  std::vector<Mesh> out;
  for (Normalization nz : {Normalization::None, Normalization::Global, Normalization::PerElement}) {
    Mesh m = start;
    SmoothConfig cfg;
    cfg.normalization = nz;
    cfg.conv_tol = 1e-12;
    cfg.max_iters = 5000;
    smooth(m, cfg);
    out.push_back(m);
  }
  CHECK((out[0].points() - out[1].points()).norm() < 1e-6);
  CHECK((out[0].points() - out[2].points()).norm() < 1e-6);
}

TEST_CASE("a regular grid is already optimal") {
  for (Method method : {Method::Laplace, Method::GradAscent}) {
    Mesh m = square_tri(6);
    SmoothConfig cfg;
    cfg.method = method;
    const SmoothResult r = smooth(m, cfg);
    CHECK(r.converged);
    CHECK(r.iters == 1);
    CHECK((m.points() - square_tri(6).points()).norm() < 1e-14);
  }
}

TEST_CASE("projected boundary vertices stay on the circle") {
  Mesh m = perturbed(disk_tri(4), 0.3, 6);
  // Free the boundary and let projection hold it on the unit circle.
  for (Index v = 0; v < m.num_vertices(); ++v)
    if (m.on_boundary(v)) m.set_geometry_tag(v, 0);
  SmoothConfig cfg;
  cfg.project = true;
  cfg.geometries = {ImplicitCircle{}};
  cfg.max_iters = 30;
  smooth(m, cfg);
  for (Index v = 0; v < m.num_vertices(); ++v)
    if (m.on_boundary(v)) CHECK(std::abs(m.point(v).head<2>().norm() - 1.0) < 1e-12);

  cfg.geometries.clear();
  CHECK_THROWS_AS(smooth(m, cfg), ArgumentError);
}

TEST_CASE("adaptive weights shrink improvable bad elements") {
  Mesh m = two_triangles(Vec3d(0, 0, 0), Vec3d(2, 0, 0), Vec3d(2, 2, 0), Vec3d(1, 0.1, 0));
  REQUIRE(element_quality(m, 0, QualityKind::Iq2) < 0.6);
  REQUIRE(element_quality(m, 1, QualityKind::Iq2) > 0.6);
  const auto w = adaptive_weights(m, QualityFn(QualityKind::Q2));
  REQUIRE(w.size() == 2);
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) / 2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w[0] / w[1] == doctest::Approx(0.99).epsilon(1e-12));

  Mesh big = perturbed(square_tri(8), 0.5, 4);
  QualityFn f(QualityKind::Q2);
  for (int round = 0; round < 10; ++round) {
    f.weights = adaptive_weights(big, f);
    const double mean = std::accumulate(f.weights.begin(), f.weights.end(), 0.0) / static_cast<double>(f.weights.size());
    CHECK(std::abs(mean - 1.0) < 1e-12);
  }
}

TEST_CASE("config validation") {
  Mesh m = square_tri(2);
  SmoothConfig cfg;
  cfg.max_iters = 0;
  CHECK_THROWS_AS(smooth(m, cfg), ArgumentError);
  cfg = {};
  cfg.ls_shrink = 1.0;
  CHECK_THROWS_AS(smooth(m, cfg), ArgumentError);
  cfg = {};
  cfg.conv_tol = -1;
  CHECK_THROWS_AS(smooth(m, cfg), ArgumentError);
}
