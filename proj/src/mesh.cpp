#include "meshopt/mesh.hpp"

#include "meshopt/geometry.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace meshopt {

namespace {

using Face = std::array<Index, 3>;

std::array<Face, 4> tet_faces(const ElementRef& el) {
  const auto& v = el.verts;
  return {Face{v[1], v[2], v[3]}, Face{v[0], v[2], v[3]}, Face{v[0], v[1], v[3]}, Face{v[0], v[1], v[2]}};
}

std::map<Face, int> face_census(const Mesh& m) {
  std::map<Face, int> count;
  for (const auto& el : m.elements()) {
    for (Face f : tet_faces(el)) {
      std::sort(f.begin(), f.end());
      ++count[f];
    }
  }
  return count;
}

std::map<std::pair<Index, Index>, int> edge_census(const Mesh& m) {
  std::map<std::pair<Index, Index>, int> count;
  for (const auto& el : m.elements())
    for (auto [a, b] : Mesh::element_edges(el)) ++count[{std::min(a, b), std::max(a, b)}];
  return count;
}

// Non-validating variant of classify_boundary used for the adjacency cache.
std::vector<bool> boundary_census(const Mesh& m) {
  std::vector<bool> out(static_cast<std::size_t>(m.num_vertices()), false);
  if (m.is_tet_mesh()) {
    for (const auto& [f, c] : face_census(m))
      if (c == 1)
        for (Index v : f) out[static_cast<std::size_t>(v)] = true;
    return out;
  }
  for (const auto& [edge, c] : edge_census(m)) {
    if (c != 1) continue;
    out[static_cast<std::size_t>(edge.first)] = true;
    out[static_cast<std::size_t>(edge.second)] = true;
  }
  return out;
}

}  // namespace

ElementRef ElementRef::polygon(std::vector<Index> verts) {
  ElementKind kind = ElementKind::Polygon;
  if (verts.size() == 3) kind = ElementKind::Triangle;
  if (verts.size() == 4) kind = ElementKind::Quad;
  return {kind, std::move(verts)};
}

Mesh::Mesh(int dimension, Points3d points, std::vector<ElementRef> elements) : dimension_(dimension) {
  if (dimension != 2 && dimension != 3) throw ArgumentError("mesh dimension must be 2 or 3");
  set_topology(std::move(points), std::move(elements));
}

void Mesh::set_topology(Points3d points, std::vector<ElementRef> elements) {
  const auto old_n = static_cast<std::size_t>(points_.cols());
  points_ = std::move(points);
  elements_ = std::move(elements);
  const auto n = static_cast<std::size_t>(points_.cols());
  if (n != old_n) {
    fixed_.resize(n, false);
    geometry_tag_.resize(n, -1);
  }
  reference_normals_.clear();
  validate();
  rebuild_adjacency();
}

void Mesh::set_elements(std::vector<ElementRef> elements) {
  elements_ = std::move(elements);
  reference_normals_.clear();
  validate();
  rebuild_adjacency();
}

void Mesh::set_fixed_mask(std::vector<bool> mask) {
  if (static_cast<Index>(mask.size()) != num_vertices()) throw ArgumentError("fixed mask size mismatch");
  fixed_ = std::move(mask);
}

void Mesh::fix_boundary() { fixed_ = classify_boundary(*this); }

void Mesh::check_index(Index v) const {
  if (v < 0 || v >= num_vertices())
    throw IndexError("vertex index " + std::to_string(v) + " out of range [0, " + std::to_string(num_vertices()) + ")");
}

void Mesh::validate() const {
  bool saw_tet = false, saw_poly = false;
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    const auto& el = elements_[e];
    const auto n = el.verts.size();
    const bool ok = (el.kind == ElementKind::Triangle && n == 3) || (el.kind == ElementKind::Quad && n == 4) ||
                    (el.kind == ElementKind::Polygon && n >= 3) || (el.kind == ElementKind::Tetrahedron && n == 4);
    if (!ok) throw ArgumentError("element " + std::to_string(e) + ": vertex count does not match its kind");
    for (Index v : el.verts) check_index(v);
    std::vector<Index> sorted = el.verts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ArgumentError("element " + std::to_string(e) + ": repeated vertex");
    (el.is_tet() ? saw_tet : saw_poly) = true;
  }
  if (saw_tet && saw_poly) throw UnsupportedError("tetrahedral meshes must not mix in surface elements");
  if (saw_tet && dimension_ != 3) throw ArgumentError("tetrahedral mesh requires dimension 3");
}

void Mesh::rebuild_adjacency() {
  const auto n = static_cast<std::size_t>(num_vertices());
  vertex_elements_.assign(n, {});
  vertex_star_.assign(n, {});
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    for (Index v : elements_[e].verts) vertex_elements_[static_cast<std::size_t>(v)].push_back(static_cast<Index>(e));
    for (auto [a, b] : element_edges(elements_[e])) {
      vertex_star_[static_cast<std::size_t>(a)].push_back(b);
      vertex_star_[static_cast<std::size_t>(b)].push_back(a);
    }
  }
  for (auto& s : vertex_star_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  on_boundary_ = boundary_census(*this);
}

Points3d Mesh::element_points(const ElementRef& el) const {
  Points3d x(3, el.size());
  for (Index i = 0; i < el.size(); ++i) x.col(i) = points_.col(el.verts[static_cast<std::size_t>(i)]);
  return x;
}

Points3d Mesh::element_points(Index e) const { return element_points(element(e)); }

void Mesh::capture_reference_orientation() {
  reference_normals_.clear();
  if (dimension_ != 3 || is_tet_mesh()) return;
  reference_normals_.reserve(elements_.size());
  for (const auto& el : elements_) reference_normals_.push_back(polygon_normal(element_points(el)));
}

void Mesh::set_reference_normals(std::vector<Vec3d> normals) {
  if (!normals.empty() && normals.size() != elements_.size()) throw ArgumentError("reference normal count mismatch");
  reference_normals_ = std::move(normals);
}

const std::vector<Index>& Mesh::elements_of(Index v) const {
  check_index(v);
  return vertex_elements_[static_cast<std::size_t>(v)];
}

std::vector<std::pair<Index, Index>> Mesh::element_edges(const ElementRef& el) {
  std::vector<std::pair<Index, Index>> out;
  const auto& v = el.verts;
  if (el.is_tet()) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) out.emplace_back(v[i], v[j]);
    return out;
  }
  for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], v[(i + 1) % v.size()]);
  return out;
}

std::vector<std::pair<Index, Index>> Mesh::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index v = 0; v < num_vertices(); ++v)
    for (Index w : vertex_star_[static_cast<std::size_t>(v)])
      if (v < w) out.emplace_back(v, w);
  return out;
}

std::vector<Index> vertex_star(const Mesh& m, Index v) {
  m.check_index(v);
  return m.vertex_star_[static_cast<std::size_t>(v)];
}

std::vector<Index> shared_elements(const Mesh& m, Index v, Index w) {
  if (v == w) throw ArgumentError("shared_elements: v and w must differ");
  const auto& ev = m.elements_of(v);
  const auto& ew = m.elements_of(w);
  std::vector<Index> out;
  std::set_intersection(ev.begin(), ev.end(), ew.begin(), ew.end(), std::back_inserter(out));
  return out;
}

std::vector<bool> classify_boundary(const Mesh& m) {
  std::vector<bool> boundary(static_cast<std::size_t>(m.num_vertices()), false);
  if (m.is_tet_mesh()) {
    for (const auto& [f, c] : face_census(m)) {
      if (c > 2) throw TopologyError("non-manifold face shared by " + std::to_string(c) + " tetrahedra");
      if (c == 1)
        for (Index v : f) boundary[static_cast<std::size_t>(v)] = true;
    }
    return boundary;
  }

  std::vector<int> boundary_edges(boundary.size(), 0);
  for (const auto& [edge, c] : edge_census(m)) {
    if (c > 2) throw TopologyError("non-manifold edge (" + std::to_string(edge.first) + ", " +
                                   std::to_string(edge.second) + ") shared by " + std::to_string(c) + " elements");
    if (c == 1) {
      ++boundary_edges[static_cast<std::size_t>(edge.first)];
      ++boundary_edges[static_cast<std::size_t>(edge.second)];
    }
  }
  for (std::size_t v = 0; v < boundary.size(); ++v) {
    if (boundary_edges[v] == 0) continue;
    if (boundary_edges[v] != 2)
      throw TopologyError("vertex " + std::to_string(v) + " lies on more than one boundary curve");
    boundary[v] = true;
  }
  return boundary;
}

std::vector<Index> ordered_link(const Mesh& m, Index v) {
  // next[a] = b for every incident triangle (v, a, b) in its own orientation.
  std::map<Index, Index> next;
  for (Index e : m.elements_of(v)) {
    const auto& el = m.element(e);
    if (el.kind != ElementKind::Triangle) throw TopologyError("ordered_link: star contains non-triangles");
    const auto& t = el.verts;
    const auto pos = static_cast<std::size_t>(std::find(t.begin(), t.end(), v) - t.begin());
    const Index a = t[(pos + 1) % 3], b = t[(pos + 2) % 3];
    if (!next.emplace(a, b).second) throw TopologyError("ordered_link: inconsistent orientation around vertex");
  }
  if (next.empty()) throw TopologyError("ordered_link: isolated vertex");
  std::vector<Index> link;
  Index cur = next.begin()->first;
  for (std::size_t i = 0; i < next.size(); ++i) {
    link.push_back(cur);
    auto it = next.find(cur);
    if (it == next.end()) throw TopologyError("ordered_link: vertex " + std::to_string(v) + " is on the boundary");
    cur = it->second;
  }
  if (cur != link.front()) throw TopologyError("ordered_link: link of vertex " + std::to_string(v) + " is not a cycle");
  return link;
}

}  // namespace meshopt
