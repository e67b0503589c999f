#pragma once

#include "meshopt/quality.hpp"

#include <filesystem>
#include <string>

namespace meshopt {

/// Linear red-to-green map of a quality value clamped to [0, 1]:
/// 0 -> "#FF0000", 1 -> "#00FF00".
std::string quality_color(double q);

/// SVG 1.1 drawing of a planar mesh, one polygon per element filled by its
/// quality. Inverted elements get class="inverted" and a thick outline.
std::string render_svg(const Mesh& m, QualityKind measure);
void render_svg(const Mesh& m, QualityKind measure, const std::filesystem::path& path);

}  // namespace meshopt
