#pragma once

#include "meshopt/mesh.hpp"

#include <cstdint>
#include <string_view>

namespace meshopt {

/// Unit square split into n x n cells, two triangles per cell:
/// (n+1)^2 vertices, 2n^2 triangles. Boundary fixed.
Mesh square_tri(int n);

/// Unit square with quads in the left half of the cells and two triangles
/// per cell in the right half. Boundary fixed.
Mesh square_mixed(int n);

/// Unit disk from n hexagonal rings: 3n(n+1)+1 vertices, 6n^2 triangles.
/// Boundary fixed and tagged 0 (the unit circle).
Mesh disk_tri(int n);

/// Unit ball from an n^3 cube grid (six tetrahedra per cell) pushed radially
/// onto the ball. Boundary fixed and tagged 0 (the unit sphere).
Mesh ball_tet(int n);

/// Copy of m with every free vertex displaced by independent uniform noise
/// in [-sigma h, sigma h] per coordinate (xy only on planar meshes), h the
/// mean edge length. Deterministic for a given seed on every platform.
Mesh perturbed(const Mesh& m, double sigma, std::uint64_t seed);

/// Generator by name: square_tri, square_mixed, disk_tri, ball_tet.
Mesh generate(std::string_view kind, int n);

}  // namespace meshopt
