#pragma once

#include "meshopt/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace meshopt {

enum class ElementKind { Triangle, Quad, Polygon, Tetrahedron };

/// Handle to one element. Planar vertex lists are counterclockwise,
/// tetrahedra positively oriented.
struct ElementRef {
  ElementKind kind = ElementKind::Triangle;
  std::vector<Index> verts;

  static ElementRef triangle(Index a, Index b, Index c) { return {ElementKind::Triangle, {a, b, c}}; }
  static ElementRef quad(Index a, Index b, Index c, Index d) { return {ElementKind::Quad, {a, b, c, d}}; }
  static ElementRef tet(Index a, Index b, Index c, Index d) { return {ElementKind::Tetrahedron, {a, b, c, d}}; }
  /// Picks Triangle/Quad/Polygon from the vertex count.
  static ElementRef polygon(std::vector<Index> verts);

  Index size() const { return static_cast<Index>(verts.size()); }
  bool is_tet() const { return kind == ElementKind::Tetrahedron; }

  friend bool operator==(const ElementRef&, const ElementRef&) = default;
};

/// Vertex coordinates, element connectivity and per-vertex boundary data.
///
/// Coordinates are stored as a 3xN matrix; planar meshes (dimension 2) keep
/// z = 0. Adjacency (vertex -> elements, vertex stars) is rebuilt whenever
/// the element list changes, so const queries never mutate.
class Mesh {
 public:
  Mesh() = default;
  Mesh(int dimension, Points3d points, std::vector<ElementRef> elements);

  int dimension() const { return dimension_; }
  bool is_planar() const { return dimension_ == 2; }
  bool is_tet_mesh() const { return !elements_.empty() && elements_.front().is_tet(); }

  Index num_vertices() const { return points_.cols(); }
  Index num_elements() const { return static_cast<Index>(elements_.size()); }

  const Points3d& points() const { return points_; }
  /// Coordinates may be changed freely; connectivity is unaffected.
  Points3d& points() { return points_; }
  Vec3d point(Index v) const { return points_.col(v); }

  const std::vector<ElementRef>& elements() const { return elements_; }
  const ElementRef& element(Index e) const { return elements_.at(static_cast<std::size_t>(e)); }
  /// Gathers the coordinates of element e, one column per vertex.
  Points3d element_points(Index e) const;
  Points3d element_points(const ElementRef& el) const;

  /// Replaces connectivity (and optionally coordinates) and rebuilds adjacency.
  void set_topology(Points3d points, std::vector<ElementRef> elements);
  void set_elements(std::vector<ElementRef> elements);

  const std::vector<bool>& fixed_mask() const { return fixed_; }
  bool is_fixed(Index v) const { return fixed_[static_cast<std::size_t>(v)]; }
  void set_fixed(Index v, bool fixed) { fixed_[static_cast<std::size_t>(v)] = fixed; }
  void set_fixed_mask(std::vector<bool> mask);
  /// Marks every boundary vertex fixed (classify_boundary).
  void fix_boundary();

  /// Optional index into a caller-owned geometry list, -1 when unset.
  const std::vector<int>& geometry_tags() const { return geometry_tag_; }
  int geometry_tag(Index v) const { return geometry_tag_[static_cast<std::size_t>(v)]; }
  void set_geometry_tag(Index v, int tag) { geometry_tag_[static_cast<std::size_t>(v)] = tag; }

  /// Per-element reference normals for surface meshes in R^3; inversion is
  /// judged against these. Empty until captured.
  const std::vector<Vec3d>& reference_normals() const { return reference_normals_; }
  void capture_reference_orientation();
  void set_reference_normals(std::vector<Vec3d> normals);

  /// True when v touches an edge (surface) or face (tets) used by one element.
  bool on_boundary(Index v) const { return on_boundary_[static_cast<std::size_t>(v)]; }

  /// Elements incident to v.
  const std::vector<Index>& elements_of(Index v) const;

  /// Edges of one element as vertex pairs: cyclic for polygons, all six for tets.
  static std::vector<std::pair<Index, Index>> element_edges(const ElementRef& el);

  /// All unique edges of the mesh with v < w.
  std::vector<std::pair<Index, Index>> edges() const;

  void check_index(Index v) const;

 private:
  void rebuild_adjacency();
  void validate() const;

  int dimension_ = 2;
  Points3d points_;
  std::vector<ElementRef> elements_;
  std::vector<bool> fixed_;
  std::vector<int> geometry_tag_;
  std::vector<Vec3d> reference_normals_;

  std::vector<std::vector<Index>> vertex_elements_;
  std::vector<std::vector<Index>> vertex_star_;
  std::vector<bool> on_boundary_;

  friend std::vector<Index> vertex_star(const Mesh& m, Index v);
};

/// V(v): vertices joined to v by an edge, sorted ascending.
std::vector<Index> vertex_star(const Mesh& m, Index v);

/// E(v, w): elements containing both v and w, ascending.
std::vector<Index> shared_elements(const Mesh& m, Index v, Index w);

/// Vertices on an edge (surfaces) or face (tet meshes) used by exactly one
/// element. Throws TopologyError on non-manifold edges/faces and on pinch
/// vertices touching more than one boundary curve.
std::vector<bool> classify_boundary(const Mesh& m);

/// Counterclockwise link of an interior surface vertex (the opposite edges
/// of its incident triangles chained into a cycle). Throws TopologyError
/// for boundary vertices or non-triangle stars.
std::vector<Index> ordered_link(const Mesh& m, Index v);

}  // namespace meshopt
