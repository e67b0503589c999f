#include "meshopt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace meshopt {

std::string quality_color(double q) {
  const double t = std::isfinite(q) ? std::clamp(q, 0.0, 1.0) : 0.0;
  const auto red = static_cast<int>(std::lround(255 * (1 - t)));
  const auto green = static_cast<int>(std::lround(255 * t));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02X%02X00", red, green);
  return buf;
}

std::string render_svg(const Mesh& m, QualityKind measure) {
  if (!m.is_planar()) throw UnsupportedError("render_svg: planar meshes only");
  const QualityReport q = quality_report(m, measure);

  Vec3d lo = Vec3d::Zero(), hi = Vec3d::Ones();
  if (m.num_vertices() > 0) {
    lo = m.points().rowwise().minCoeff();
    hi = m.points().rowwise().maxCoeff();
  }
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-300});
  const double size = 800, pad = 10;
  const double s = size / span;
  // y grows downwards in SVG.
  auto px = [&](Index v) { return pad + s * (m.points()(0, v) - lo.x()); };
  auto py = [&](Index v) { return pad + s * (hi.y() - m.points()(1, v)); };

  std::ostringstream out;
  out.precision(6);
  const double w = 2 * pad + s * (hi.x() - lo.x()), h = 2 * pad + s * (hi.y() - lo.y());
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h << "\">\n"
      << "<g stroke=\"#000000\" stroke-width=\"0.5\">\n";
  for (Index e = 0; e < m.num_elements(); ++e) {
    const bool inverted = signed_measure(m, e) <= 0;
    out << "<polygon";
    if (inverted) out << " class=\"inverted\" stroke=\"#0000FF\" stroke-width=\"3\"";
    out << " fill=\"" << quality_color(q.values[static_cast<std::size_t>(e)]) << "\" points=\"";
    const auto& vs = m.element(e).verts;
    for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? " " : "") << px(vs[i]) << ',' << py(vs[i]);
    out << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

void render_svg(const Mesh& m, QualityKind measure, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << render_svg(m, measure);
}

}  // namespace meshopt
