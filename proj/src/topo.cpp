#include "meshopt/topo.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>

namespace meshopt {

namespace {

TopoResult reject(std::string reason) { return {false, std::move(reason), -1, -1}; }

bool all_triangles(const Mesh& m, const std::vector<Index>& elements) {
  return std::all_of(elements.begin(), elements.end(),
                     [&](Index e) { return m.element(e).kind == ElementKind::Triangle; });
}

// Third vertex of triangle e, which must contain v and w.
Index opposite(const ElementRef& t, Index v, Index w) {
  for (Index x : t.verts)
    if (x != v && x != w) return x;
  return -1;
}

// True when triangle t traverses v -> w.
bool runs_forward(const ElementRef& t, Index v, Index w) {
  for (std::size_t i = 0; i < 3; ++i)
    if (t.verts[i] == v) return t.verts[(i + 1) % 3] == w;
  return false;
}

bool contains(const ElementRef& el, Index v) { return std::find(el.verts.begin(), el.verts.end(), v) != el.verts.end(); }

Vec3d normal_of(const Points3d& x, const ElementRef& t) {
  return tri_normal<double>(x.col(t.verts[0]), x.col(t.verts[1]), x.col(t.verts[2]));
}

double iq2_of(const Mesh& m, const Points3d& x, const ElementRef& t, const Vec3d& reference) {
  Points3d p(3, 3);
  for (Index i = 0; i < 3; ++i) p.col(i) = x.col(t.verts[static_cast<std::size_t>(i)]);
  const AreaFrame<double> frame{m.is_planar() ? Ambient::Planar : Ambient::Space, reference};
  return iq2(p, frame);
}

// Commits new connectivity, carrying per-vertex flags and reference normals.
void commit(Mesh& m, Points3d points, std::vector<ElementRef> elements, std::vector<bool> fixed, std::vector<int> tags,
            std::vector<Vec3d> normals) {
  m.set_topology(std::move(points), std::move(elements));
  m.set_fixed_mask(std::move(fixed));
  for (Index v = 0; v < m.num_vertices(); ++v) m.set_geometry_tag(v, tags[static_cast<std::size_t>(v)]);
  if (!normals.empty()) m.set_reference_normals(std::move(normals));
}

template <typename T>
std::vector<T> erase_at(std::vector<T> values, Index r) {
  values.erase(values.begin() + r);
  return values;
}

Points3d erase_column(const Points3d& x, Index r) {
  Points3d out(3, x.cols() - 1);
  out.leftCols(r) = x.leftCols(r);
  out.rightCols(x.cols() - r - 1) = x.rightCols(x.cols() - r - 1);
  return out;
}

}  // namespace

TopoResult edge_collapse(Mesh& m, Index v, Index w) {
  m.check_index(v);
  m.check_index(w);
  if (v == w) return reject("degenerate edge");
  if (m.is_tet_mesh()) return reject("tetrahedral meshes are not supported");
  const auto shared = shared_elements(m, v, w);
  if (shared.empty()) return reject("not an edge");
  if (!all_triangles(m, shared)) return reject("edge touches a non-triangle element");
  for (Index e : shared)
    if (!runs_forward(m.element(e), v, w) && !runs_forward(m.element(e), w, v)) return reject("not an edge");
  if (m.is_fixed(v) && m.is_fixed(w)) return reject("both endpoints are fixed");

  const bool interior_edge = shared.size() == 2;
  if (interior_edge && m.on_boundary(v) && m.on_boundary(w)) return reject("interior edge joins two boundary vertices");

  // Link condition: common neighbours are exactly the opposite vertices.
  const auto sv = vertex_star(m, v), sw = vertex_star(m, w);
  std::vector<Index> common;
  std::set_intersection(sv.begin(), sv.end(), sw.begin(), sw.end(), std::back_inserter(common));
  std::vector<Index> opp;
  for (Index e : shared) opp.push_back(opposite(m.element(e), v, w));
  std::sort(opp.begin(), opp.end());
  if (common != opp) return reject("link condition violated");

  // Survivor and its position.
  Index keep = std::min(v, w), gone = std::max(v, w);
  Vec3d target = 0.5 * (m.point(v) + m.point(w));
  auto prefer = [&](Index x) {
    keep = x;
    gone = x == v ? w : v;
    target = m.point(x);
  };
  if (m.is_fixed(v) || m.is_fixed(w))
    prefer(m.is_fixed(v) ? v : w);
  else if (m.on_boundary(v) != m.on_boundary(w))
    prefer(m.on_boundary(v) ? v : w);

  Points3d x = m.points();
  x.col(keep) = target;

  std::vector<ElementRef> elements;
  std::vector<Vec3d> normals;
  const auto& ref = m.reference_normals();
  for (Index e = 0; e < m.num_elements(); ++e) {
    ElementRef el = m.element(e);
    if (contains(el, v) && contains(el, w)) continue;
    const bool touched = contains(el, gone) || contains(el, keep);
    for (Index& y : el.verts)
      if (y == gone) y = keep;
    if (touched && el.kind == ElementKind::Triangle) {
      const Vec3d before = normal_of(m.points(), m.element(e));
      const Vec3d after = normal_of(x, el);
      if (before.squaredNorm() > 0 && before.dot(after) <= 0) return reject("collapse would invert an element");
    }
    for (Index& y : el.verts)
      if (y > gone) --y;
    elements.push_back(std::move(el));
    if (!ref.empty()) normals.push_back(ref[static_cast<std::size_t>(e)]);
  }

  std::vector<bool> fixed = m.fixed_mask();
  std::vector<int> tags = m.geometry_tags();
  commit(m, erase_column(x, gone), std::move(elements), erase_at(std::move(fixed), gone), erase_at(std::move(tags), gone),
         std::move(normals));
  return {true, {}, keep > gone ? keep - 1 : keep, gone};
}

TopoResult edge_swap(Mesh& m, Index v, Index w) {
  m.check_index(v);
  m.check_index(w);
  if (m.is_tet_mesh()) return reject("tetrahedral meshes are not supported");
  const auto shared = v == w ? std::vector<Index>{} : shared_elements(m, v, w);
  if (shared.empty()) return reject("not an edge");
  if (shared.size() != 2) return reject("boundary edge");
  if (!all_triangles(m, shared)) return reject("edge touches a non-triangle element");

  Index t1 = shared[0], t2 = shared[1];
  if (!runs_forward(m.element(t1), v, w)) std::swap(t1, t2);
  if (!runs_forward(m.element(t1), v, w) || !runs_forward(m.element(t2), w, v))
    return reject("inconsistent orientation");
  const Index a = opposite(m.element(t1), v, w);
  const Index b = opposite(m.element(t2), v, w);
  const auto sa = vertex_star(m, a);
  if (std::binary_search(sa.begin(), sa.end(), b)) return reject("opposite diagonal already exists");

  const ElementRef n1 = ElementRef::triangle(v, b, a);
  const ElementRef n2 = ElementRef::triangle(b, w, a);
  const Points3d& x = m.points();
  const Vec3d up = normal_of(x, m.element(t1)) + normal_of(x, m.element(t2));
  if (!(normal_of(x, n1).dot(up) > 0 && normal_of(x, n2).dot(up) > 0)) return reject("quadrilateral is not convex");

  const Vec3d ref = m.is_planar() ? Vec3d::UnitZ() : up;
  const double old_min = std::min(iq2_of(m, x, m.element(t1), ref), iq2_of(m, x, m.element(t2), ref));
  const double new_min = std::min(iq2_of(m, x, n1, ref), iq2_of(m, x, n2, ref));
  if (!(new_min > old_min)) return reject("swap does not improve the minimum iq2");

  std::vector<ElementRef> elements = m.elements();
  elements[static_cast<std::size_t>(t1)] = n1;
  elements[static_cast<std::size_t>(t2)] = n2;
  std::vector<Vec3d> normals = m.reference_normals();
  commit(m, m.points(), std::move(elements), m.fixed_mask(), m.geometry_tags(), std::move(normals));
  return {true, {}, -1, -1};
}

TopoResult vertex_split(Mesh& m, Index v, const Vec3d& dir_in) {
  m.check_index(v);
  if (m.is_tet_mesh()) return reject("tetrahedral meshes are not supported");
  if (m.on_boundary(v) || m.is_fixed(v)) return reject("boundary or fixed vertex");
  if (!all_triangles(m, m.elements_of(v))) return reject("star contains non-triangle elements");
  if (vertex_star(m, v).size() < 4) return reject("star too small");
  if (!(dir_in.norm() > 0)) return reject("zero split direction");

  const std::vector<Index> link = ordered_link(m, v);
  const auto k = link.size();
  const Points3d& x = m.points();
  const Vec3d p = x.col(v);

  Vec3d normal = Vec3d::Zero();
  for (Index e : m.elements_of(v)) normal += normal_of(x, m.element(e));
  if (m.is_planar()) normal = Vec3d::UnitZ();
  if (!(normal.norm() > 0)) return reject("degenerate star");
  normal.normalize();
  Vec3d dir = dir_in - dir_in.dot(normal) * normal;
  if (!(dir.norm() > 0)) return reject("split direction is normal to the surface");
  dir.normalize();
  const Vec3d perp = dir.cross(normal);

  std::size_t ia = 0;
  double mean_len = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if ((x.col(link[i]) - p).dot(perp) > (x.col(link[ia]) - p).dot(perp)) ia = i;
    mean_len += (x.col(link[i]) - p).norm();
  }
  mean_len /= static_cast<double>(k);
  const std::size_t ib = (ia + k / 2) % k;
  const Index a = link[ia], b = link[ib];
  const double eps = 1e-3 * mean_len;

  // Link vertices strictly between a and b, counterclockwise.
  std::vector<Index> arc;
  for (std::size_t i = (ia + 1) % k; i != ib; i = (i + 1) % k) arc.push_back(link[i]);

  const Index vnew = m.num_vertices();
  Points3d xs(3, vnew + 1);
  xs.leftCols(vnew) = x;
  xs.col(v) = p - eps * dir;
  xs.col(vnew) = p + eps * dir;

  std::vector<ElementRef> elements = m.elements();
  for (Index e : m.elements_of(v)) {
    ElementRef& t = elements[static_cast<std::size_t>(e)];
    const bool in_arc = std::any_of(t.verts.begin(), t.verts.end(),
                                    [&](Index y) { return std::find(arc.begin(), arc.end(), y) != arc.end(); });
    if (in_arc)
      for (Index& y : t.verts)
        if (y == v) y = vnew;
  }
  elements.push_back(ElementRef::triangle(v, a, vnew));
  elements.push_back(ElementRef::triangle(vnew, b, v));

  std::vector<Vec3d> normals = m.reference_normals();
  if (!normals.empty()) {
    const Vec3d n0 = normals[static_cast<std::size_t>(m.elements_of(v).front())];
    normals.push_back(n0);
    normals.push_back(n0);
  }
  std::vector<bool> fixed = m.fixed_mask();
  fixed.push_back(false);
  std::vector<int> tags = m.geometry_tags();
  tags.push_back(-1);
  commit(m, std::move(xs), std::move(elements), std::move(fixed), std::move(tags), std::move(normals));
  return {true, {}, v, vnew};
}

TopoResult apply(Mesh& m, const TopoOp& op) {
  switch (op.kind) {
    case TopoKind::EdgeCollapse: return edge_collapse(m, op.a, op.b);
    case TopoKind::EdgeSwap: return edge_swap(m, op.a, op.b);
    case TopoKind::VertexSplit: return vertex_split(m, op.a, op.dir);
  }
  return reject("unknown operation");
}

namespace {

std::vector<Index> bad_elements(const Mesh& m, double threshold) {
  std::vector<Index> bad;
  for (Index e = 0; e < m.num_elements(); ++e) {
    double q;
    try {
      q = element_quality(m, e, QualityKind::Iq2);
    } catch (const SingularityError&) {
      q = 0;
    }
    if (q < threshold) bad.push_back(e);
  }
  return bad;
}

// Finds a triangle with exactly these vertices, or -1.
Index find_triangle(const Mesh& m, const std::array<Index, 3>& t) {
  for (Index x : t)
    if (x < 0 || x >= m.num_vertices()) return -1;
  for (Index e : m.elements_of(t[0])) {
    const auto& el = m.element(e);
    if (el.kind == ElementKind::Triangle && contains(el, t[1]) && contains(el, t[2])) return e;
  }
  return -1;
}

}  // namespace

RemovalLog remove_bad_elements(Mesh& m, const RemovalOptions& opts) {
  if (m.is_tet_mesh()) throw UnsupportedError("remove_bad_elements: triangle meshes only");
  for (const auto& el : m.elements())
    if (el.kind != ElementKind::Triangle) throw UnsupportedError("remove_bad_elements: triangle meshes only");

  RemovalLog log;
  for (int phase = 0; phase < opts.max_phases; ++phase) {
    RemovalPhase entry;
    entry.converged = smooth(m, opts.smoothing).converged;
    const auto bad = bad_elements(m, opts.threshold);
    entry.bad = static_cast<Index>(bad.size());
    if (bad.empty()) {
      log.phases.push_back(entry);
      log.success = true;
      return log;
    }

    std::vector<std::array<Index, 3>> targets;
    for (Index e : bad) {
      const auto& vs = m.element(e).verts;
      targets.push_back({vs[0], vs[1], vs[2]});
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const Index e = find_triangle(m, targets[i]);
      if (e < 0) continue;
      const auto t = targets[i];
      std::array<std::pair<Index, Index>, 3> edges{{{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}}};
      std::sort(edges.begin(), edges.end(), [&](const auto& p, const auto& q) {
        return (m.point(p.first) - m.point(p.second)).norm() < (m.point(q.first) - m.point(q.second)).norm();
      });
      if (opts.swaps) {
        bool swapped = false;
        for (auto [a, b] : edges)
          if (edge_swap(m, a, b)) {
            swapped = true;
            break;
          }
        if (swapped) continue;
      }
      for (auto [a, b] : edges) {
        const TopoResult r = edge_collapse(m, a, b);
        if (!r) continue;
        ++entry.collapses;
        // Renumber the remaining targets.
        const Index keep_old = r.kept >= r.removed ? r.kept + 1 : r.kept;
        for (std::size_t j = i + 1; j < targets.size(); ++j)
          for (Index& y : targets[j]) {
            if (y == r.removed) y = keep_old;
            if (y > r.removed) --y;
          }
        break;
      }
    }
    log.phases.push_back(entry);
    if (entry.collapses == 0) {
      log.irreducible = bad;
      return log;
    }
  }
  const auto remaining = bad_elements(m, opts.threshold);
  log.success = remaining.empty();
  if (!log.success) log.irreducible = remaining;
  return log;
}

}  // namespace meshopt
