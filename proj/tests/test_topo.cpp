#include "doctest.h"

#include "meshopt/generate.hpp"
#include "meshopt/topo.hpp"

#include <algorithm>
#include <set>

using namespace meshopt;

namespace {

Index grid_index(int n, int i, int j) { return j * (n + 1) + i; }

std::multiset<std::vector<Index>> sorted_triples(const Mesh& m) {
  std::multiset<std::vector<Index>> out;
  for (const auto& el : m.elements()) {
    auto v = el.verts;
    std::sort(v.begin(), v.end());
    out.insert(v);
  }
  return out;
}

Index euler(const Mesh& m) {
  return m.num_vertices() - static_cast<Index>(m.edges().size()) + m.num_elements();
}

bool all_positive(const Mesh& m) {
  for (Index e = 0; e < m.num_elements(); ++e)
    if (!(signed_measure(m, e) > 0)) return false;
  return true;
}

// Splits triangle e at its centroid into three.
void insert_centroid(Mesh& m, Index e) {
  const auto v = m.element(e).verts;
  Points3d x(3, m.num_vertices() + 1);
  x << m.points(), (m.point(v[0]) + m.point(v[1]) + m.point(v[2])) / 3.0;
  const Index p = m.num_vertices();
  auto el = m.elements();
  el[static_cast<std::size_t>(e)] = ElementRef::triangle(v[0], v[1], p);
  el.push_back(ElementRef::triangle(v[1], v[2], p));
  el.push_back(ElementRef::triangle(v[2], v[0], p));
  auto fixed = m.fixed_mask();
  fixed.push_back(false);
  m.set_topology(x, el);
  m.set_fixed_mask(fixed);
}

// Two triangles (v, w, a) and (w, v, b) on the diagonal v = 0, w = 1.
Mesh kite(const Vec3d& a, const Vec3d& b) {
  Points3d x(3, 4);
  x << Vec3d(0, 0, 0), Vec3d(3, 0, 0), a, b;
  return Mesh(2, x, {ElementRef::triangle(0, 1, 2), ElementRef::triangle(1, 0, 3)});
}

}  // namespace

TEST_CASE("collapsing an interior edge") {
  const int n = 4;
  Mesh m = square_tri(n);
  const Index a = grid_index(n, 1, 1), b = grid_index(n, 2, 1);
  const Vec3d mid = 0.5 * (m.point(a) + m.point(b));
  const Index chi = euler(m);
  const TopoResult r = edge_collapse(m, a, b);
  REQUIRE(r);
  CHECK(m.num_elements() == 2 * n * n - 2);
  CHECK(m.num_vertices() == (n + 1) * (n + 1) - 1);
  CHECK(r.removed == b);
  CHECK(r.kept == a);
  CHECK(m.point(r.kept).isApprox(mid));
  CHECK(euler(m) == chi);
  CHECK(all_positive(m));
  CHECK(std::count(m.fixed_mask().begin(), m.fixed_mask().end(), true) == 4 * n);
}

TEST_CASE("collapsing toward a fixed boundary vertex") {
  const int n = 4;
  Mesh m = square_tri(n);
  const Index free_b = grid_index(n, 1, 0), pinned = grid_index(n, 2, 0);
  m.set_fixed(free_b, false);
  const Vec3d keep = m.point(pinned);
  const TopoResult r = edge_collapse(m, free_b, pinned);
  REQUIRE(r);
  CHECK(m.num_elements() == 2 * n * n - 1);
  CHECK(r.kept == pinned - 1);
  CHECK(m.point(r.kept) == keep);
  CHECK(m.is_fixed(r.kept));
  CHECK(all_positive(m));
}

TEST_CASE("collapse rejections leave the mesh untouched") {
  Mesh grid = square_tri(3);
  const Mesh before = grid;
  CHECK_FALSE(edge_collapse(grid, 0, 1));
  CHECK_FALSE(edge_collapse(grid, 0, grid_index(3, 3, 3)));
  CHECK(grid.points() == before.points());
  CHECK(grid.elements() == before.elements());
  CHECK_THROWS_AS(edge_collapse(grid, 0, 99), IndexError);

  // Interior edge between two boundary vertices would pinch the domain.
  Mesh pinch = square_tri(2);
  pinch.set_fixed(1, false);
  pinch.set_fixed(5, false);
  REQUIRE(shared_elements(pinch, 1, 5).size() == 2);
  CHECK_FALSE(edge_collapse(pinch, 1, 5));

  // Triangle split at an interior point: (0,1) has common neighbours {2, 3}
  // but only 3 is opposite, so the link condition fails.
  Points3d x(3, 4);
  x << Vec3d(0, 0, 0), Vec3d(1, 0, 0), Vec3d(0, 1, 0), Vec3d(0.3, 0.3, 0);
  Mesh fan(2, x, {ElementRef::triangle(0, 1, 3), ElementRef::triangle(1, 2, 3), ElementRef::triangle(2, 0, 3)});
  const TopoResult r = edge_collapse(fan, 0, 1);
  CHECK_FALSE(r);
  CHECK_FALSE(r.reason.empty());
  CHECK(fan.num_elements() == 3);

  Mesh ball = ball_tet(2);
  CHECK_FALSE(edge_collapse(ball, 0, 1));
  CHECK_THROWS_AS(remove_bad_elements(ball), UnsupportedError);
}

TEST_CASE("edge swap") {
  Mesh m = kite(Vec3d(1.5, 1, 0), Vec3d(1.5, -1, 0));
  const double before = std::min(element_quality(m, 0, QualityKind::Iq2), element_quality(m, 1, QualityKind::Iq2));
  REQUIRE(edge_swap(m, 0, 1));
  CHECK(m.num_elements() == 2);
  CHECK(shared_elements(m, 2, 3).size() == 2);
  CHECK(shared_elements(m, 0, 1).empty());
  CHECK(all_positive(m));
  const double after = std::min(element_quality(m, 0, QualityKind::Iq2), element_quality(m, 1, QualityKind::Iq2));
  CHECK(after > before);
  // Swapping back would lower the minimum.
  CHECK_FALSE(edge_swap(m, 2, 3));

  Mesh concave = kite(Vec3d(1.5, 1, 0), Vec3d(-1, -0.2, 0));
  CHECK_FALSE(edge_swap(concave, 0, 1));
  Mesh boundary = square_tri(2);
  CHECK_FALSE(edge_swap(boundary, 0, 1));
}

TEST_CASE("vertex split and its inverse") {
  const int n = 4;
  const Mesh orig = square_tri(n);
  const Index c = grid_index(n, 2, 2);
  for (const Vec3d& dir : {Vec3d(1, 0, 0), Vec3d(0, 1, 0), Vec3d(1, 0.3, 0), Vec3d(-1, 1, 5)}) {
    Mesh m = orig;
    const TopoResult r = vertex_split(m, c, dir);
    REQUIRE(r);
    CHECK(m.num_elements() == orig.num_elements() + 2);
    CHECK(m.num_vertices() == orig.num_vertices() + 1);
    CHECK(r.kept == c);
    CHECK(r.removed == orig.num_vertices());
    CHECK(vertex_star(m, c).size() >= 4);
    CHECK(vertex_star(m, r.removed).size() >= 4);
    CHECK(all_positive(m));
    CHECK(euler(m) == euler(orig));

    REQUIRE(edge_collapse(m, c, r.removed));
    CHECK(sorted_triples(m) == sorted_triples(orig));
    CHECK((m.points() - orig.points()).norm() < 1e-12);
  }

  Mesh m = orig;
  CHECK_FALSE(vertex_split(m, 0, Vec3d(1, 0, 0)));
  CHECK_FALSE(vertex_split(m, c, Vec3d::Zero()));
  Mesh fan(2, (Points3d(3, 4) << Vec3d(0, 0, 0), Vec3d(1, 0, 0), Vec3d(0, 1, 0), Vec3d(0.3, 0.3, 0)).finished(),
           {ElementRef::triangle(0, 1, 3), ElementRef::triangle(1, 2, 3), ElementRef::triangle(2, 0, 3)});
  CHECK_FALSE(vertex_split(fan, 3, Vec3d(1, 0, 0)));
}

TEST_CASE("apply dispatches on the operation kind") {
  Mesh m = square_tri(4);
  CHECK(apply(m, {TopoKind::VertexSplit, grid_index(4, 2, 2), -1, Vec3d(1, 0, 0)}));
  CHECK(apply(m, {TopoKind::EdgeCollapse, grid_index(4, 2, 2), m.num_vertices() - 1, {}}));
  CHECK(m.num_elements() == 32);
}

TEST_CASE("bad element removal") {
  Mesh m = square_tri(6);
  for (Index e : {Index{14}, Index{40}}) insert_centroid(m, e);
  const Index start = m.num_elements();
  const RemovalLog log = remove_bad_elements(m);
  CHECK(log.success);
  CHECK(log.irreducible.empty());
  REQUIRE(log.phases.size() >= 2);
  CHECK(log.phases.front().bad > 0);
  CHECK(log.phases.back().bad == 0);
  CHECK(m.num_elements() < start);
  CHECK(quality_report(m, QualityKind::Iq2).min >= 0.6);
  CHECK(all_positive(m));
}

TEST_CASE("removal reports irreducible elements") {
  Points3d x(3, 3);
  x << Vec3d(0, 0, 0), Vec3d(1, 0, 0), Vec3d(0.5, 0.05, 0);
  Mesh sliver(2, x, {ElementRef::triangle(0, 1, 2)});
  sliver.fix_boundary();
  const RemovalLog log = remove_bad_elements(sliver);
  CHECK_FALSE(log.success);
  CHECK(log.irreducible == std::vector<Index>{0});
  CHECK(sliver.num_elements() == 1);
}

TEST_CASE("threshold zero is a no-op on valid meshes") {
  Mesh m = perturbed(square_tri(5), 0.2, 2);
  RemovalOptions opts;
  opts.threshold = 0;
  const RemovalLog log = remove_bad_elements(m, opts);
  CHECK(log.success);
  CHECK(m.num_elements() == 50);
  CHECK(log.phases.size() == 1);
}
