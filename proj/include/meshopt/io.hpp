#pragma once

#include "meshopt/mesh.hpp"

#include <filesystem>
#include <iosfwd>

namespace meshopt {

/// Surface/planar text format:
///
///   OFF
///   nv ne 0
///   x y z            (nv lines)
///   k i0 ... ik-1    (ne lines, 0-based)
///   dim 2            (optional, otherwise inferred from z)
///   fixed i j ...    (optional, indices of fixed vertices)
///   tag i t          (optional, one line per tagged vertex)
///
/// Blank lines and text after '#' are ignored. Coordinates are written with
/// 17 significant digits, so save/load round-trips exactly.
Mesh read_off(std::istream& in);
void write_off(const Mesh& m, std::ostream& out);

/// Tetrahedral node/ele pair. `.node`: "nv 3 0 1" then "i x y z fixed";
/// `.ele`: "ne 4 0" then "i a b c d". Indices start at 0 or 1 (detected
/// from the first node line).
Mesh read_node_ele(std::istream& node, std::istream& ele);
void write_node_ele(const Mesh& m, std::ostream& node, std::ostream& ele);

/// Dispatches on the extension: ".node"/".ele" select the tet pair (the
/// sibling file is derived from the stem), anything else is OFF.
Mesh load_mesh(const std::filesystem::path& path);
void save_mesh(const Mesh& m, const std::filesystem::path& path);

}  // namespace meshopt
