#pragma once

#include "meshopt/smooth.hpp"

#include <string>
#include <vector>

namespace meshopt {

enum class TopoKind { EdgeCollapse, EdgeSwap, VertexSplit };

/// One local operation on a triangle mesh. Edge operations use (a, b);
/// VertexSplit uses a and dir.
struct TopoOp {
  TopoKind kind = TopoKind::EdgeCollapse;
  Index a = -1;
  Index b = -1;
  Vec3d dir = Vec3d::UnitX();
};

/// Outcome of an operation. A rejected operation leaves the mesh untouched.
struct TopoResult {
  bool applied = false;
  std::string reason;
  /// EdgeCollapse: the surviving vertex (after renumbering) and the removed
  /// one (before renumbering). VertexSplit: kept = v, removed = new vertex.
  Index kept = -1;
  Index removed = -1;

  explicit operator bool() const { return applied; }
};

/// Merges edge (v, w). The survivor sits on the fixed endpoint if one is
/// fixed, on the boundary endpoint if one is on the boundary, else at the
/// midpoint. The removed vertex is erased and higher indices shift down.
/// Rejects: both endpoints fixed, link-condition violations, interior edges
/// joining two boundary vertices, and collapses that would invert a
/// surviving planar triangle.
TopoResult edge_collapse(Mesh& m, Index v, Index w);

/// Replaces the diagonal shared by two triangles with the other one, when the
/// quadrilateral is convex and the smaller iq2 of the pair strictly grows.
TopoResult edge_swap(Mesh& m, Index v, Index w);

/// Splits interior vertex v into v - eps*dir and a new vertex v + eps*dir
/// (appended last), eps = 1e-3 times the mean edge length at v. The link is
/// cut at the two vertices furthest along the line orthogonal to dir; the
/// +dir arc moves to the new vertex and two triangles fill the gap.
/// Requires valence >= 4. Collapsing (v, new vertex) restores the original
/// connectivity.
TopoResult vertex_split(Mesh& m, Index v, const Vec3d& dir);

TopoResult apply(Mesh& m, const TopoOp& op);

struct RemovalPhase {
  Index bad = 0;        // elements below threshold after smoothing
  Index collapses = 0;  // collapses applied in this phase
  bool converged = false;
};

struct RemovalLog {
  std::vector<RemovalPhase> phases;
  /// Elements still below threshold when the loop gave up (final indices).
  std::vector<Index> irreducible;
  bool success = false;
};

struct RemovalOptions {
  double threshold = 0.6;
  SmoothConfig smoothing;  // defaults to Q2 ascent
  int max_phases = 100;
  /// Also try edge swaps on bad elements before collapsing.
  bool swaps = false;
};

/// Alternates Q2 smoothing with collapsing the shortest collapsible edge of
/// every element whose iq2 is below the threshold.
RemovalLog remove_bad_elements(Mesh& m, const RemovalOptions& opts = {});

}  // namespace meshopt
