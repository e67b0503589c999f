#include "doctest.h"

#include "meshopt/generate.hpp"
#include "meshopt/io.hpp"
#include "meshopt/methods.hpp"
#include "meshopt/report.hpp"
#include "meshopt/svg.hpp"

#include "json.hpp"

#include <filesystem>
#include <sstream>

using namespace meshopt;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "meshopt_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

void require_same(const Mesh& a, const Mesh& b) {
  CHECK(a.dimension() == b.dimension());
  CHECK(a.points() == b.points());
  CHECK(a.elements() == b.elements());
  CHECK(a.fixed_mask() == b.fixed_mask());
}

}  // namespace

TEST_CASE("off round trip is exact") {
  Mesh m = perturbed(square_mixed(5), 0.3, 3);
  m.set_geometry_tag(0, 1);
  std::stringstream s;
  write_off(m, s);
  const Mesh back = read_off(s);
  require_same(m, back);
  CHECK(back.geometry_tags() == m.geometry_tags());

  const auto path = scratch_dir() / "disk.off";
  const Mesh disk = perturbed(disk_tri(3), 0.2, 1);
  save_mesh(disk, path);
  require_same(disk, load_mesh(path));
}

TEST_CASE("node/ele round trip") {
  const Mesh ball = perturbed(ball_tet(3), 0.3, 2);
  std::stringstream node, ele;
  write_node_ele(ball, node, ele);
  require_same(ball, read_node_ele(node, ele));

  const auto path = scratch_dir() / "ball.node";
  save_mesh(ball, path);
  CHECK(std::filesystem::exists(scratch_dir() / "ball.ele"));
  require_same(ball, load_mesh(scratch_dir() / "ball.ele"));
  CHECK_THROWS_AS(save_mesh(ball, scratch_dir() / "ball.off"), ArgumentError);
}

TEST_CASE("one-based node files") {
  std::istringstream node("4 3 0 1\n1 0 0 0 1\n2 1 0 0 1\n3 0 1 0 1\n4 0 0 1 0\n");
  std::istringstream ele("1 4 0\n1 1 2 3 4\n");
  const Mesh m = read_node_ele(node, ele);
  CHECK(m.element(0).verts == std::vector<Index>{0, 1, 2, 3});
  CHECK(m.is_fixed(0));
  CHECK_FALSE(m.is_fixed(3));
}

TEST_CASE("off comments, inferred dimension and sections") {
  std::istringstream in(
      "# a triangle\nOFF\n3 1 0\n0 0 0\n1 0 0  # right\n0 1 0\n\n3 0 1 2\nfixed 0 1\ntag 2 0\n");
  const Mesh m = read_off(in);
  CHECK(m.dimension() == 2);
  CHECK(m.is_fixed(1));
  CHECK_FALSE(m.is_fixed(2));
  CHECK(m.geometry_tag(2) == 0);

  std::istringstream lifted("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 1\n3 0 1 2\n");
  CHECK(read_off(lifted).dimension() == 3);
}

TEST_CASE("parse and format errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_off(in);
    } catch (const ParseError& e) {
      return e.line;
    }
    return 0;
  };
  std::string ten = "OFF\n10 1 0\n";
  for (int i = 0; i < 10; ++i) ten += "0 0 0\n";
  std::istringstream bad_index(ten + "3 0 1 99\n");
  CHECK_THROWS_AS(read_off(bad_index), FormatError);
  CHECK(line_of(ten + "3 0 1 99\n") == 13);
  CHECK(line_of(ten + "3 0 1 x\n") == 13);

  CHECK(line_of("OFX\n") == 1);
  CHECK(line_of("OFF\n1 0 0\n0 zero 0\n") == 3);
  CHECK(line_of("OFF\n2 0 0\n0 0 0\n") == 4);
  CHECK(line_of("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n4 0 1 2\n") == 6);
  CHECK(line_of("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\nweird 1\n") == 7);
  CHECK(line_of("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\nfixed 7\n") == 7);

  std::istringstream node("2 3 0 1\n0 0 0 0 0\n2 1 0 0 0\n"), ele("0 4 0\n");
  CHECK_THROWS_AS(read_node_ele(node, ele), FormatError);
  CHECK_THROWS_AS(load_mesh(scratch_dir() / "missing.off"), Error);
}

TEST_CASE("generator sizes") {
  CHECK(square_tri(4).num_vertices() == 25);
  CHECK(square_tri(4).num_elements() == 32);
  const Mesh mixed = square_mixed(4);
  CHECK(mixed.num_elements() == 8 + 16);
  const Mesh ball = ball_tet(3);
  CHECK(ball.num_vertices() == 64);
  CHECK(ball.num_elements() == 6 * 27);
  for (Index e = 0; e < ball.num_elements(); ++e) CHECK(signed_measure(ball, e) > 0);
  for (Index v = 0; v < ball.num_vertices(); ++v)
    if (ball.is_fixed(v)) CHECK(ball.point(v).norm() == doctest::Approx(1.0));
  const Mesh disk = disk_tri(3);
  for (Index e = 0; e < disk.num_elements(); ++e) CHECK(signed_measure(disk, e) > 0);
  for (Index v = 0; v < disk.num_vertices(); ++v)
    if (disk.on_boundary(v)) CHECK(disk.point(v).norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(square_tri(1), ArgumentError);
  CHECK_THROWS_AS(generate("torus", 4), ArgumentError);
}

TEST_CASE("perturbation is deterministic and respects fixed vertices") {
  const Mesh base = square_tri(8);
  CHECK(perturbed(base, 0.5, 9).points() == perturbed(base, 0.5, 9).points());
  CHECK(perturbed(base, 0.5, 9).points() != perturbed(base, 0.5, 10).points());
  CHECK(perturbed(base, 0.0, 9).points() == base.points());
  const Mesh p = perturbed(base, 1.0, 1);
  for (Index v = 0; v < base.num_vertices(); ++v)
    if (base.is_fixed(v)) CHECK(p.point(v) == base.point(v));
  CHECK(p.points().row(2).isZero(0));
  CHECK(quality_report(p, QualityKind::MeanRatio).invalid_count >= 1);
}

TEST_CASE("svg output") {
  CHECK(quality_color(0) == "#FF0000");
  CHECK(quality_color(1) == "#00FF00");
  CHECK(quality_color(-3) == "#FF0000");
  CHECK(quality_color(7) == "#00FF00");

  const std::string clean = render_svg(square_tri(3), QualityKind::MeanRatio);
  CHECK(clean.find("<svg") != std::string::npos);
  CHECK(clean.find("class=\"inverted\"") == std::string::npos);

  const Mesh tangled = perturbed(square_tri(8), 1.0, 1);
  const std::string svg = render_svg(tangled, QualityKind::MeanRatio);
  std::size_t count = 0;
  for (auto pos = svg.find("class=\"inverted\""); pos != std::string::npos; pos = svg.find("class=\"inverted\"", pos + 1))
    ++count;
  CHECK(static_cast<Index>(count) == quality_report(tangled, QualityKind::MeanRatio).invalid_count);
  CHECK_THROWS_AS(render_svg(ball_tet(2), QualityKind::MeanRatio), UnsupportedError);
}

TEST_CASE("json reports") {
  const Mesh m = perturbed(square_tri(4), 0.3, 1);
  RunReport r;
  r.method = "none";
  r.quality = quality_report(m, QualityKind::MeanRatio);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["method"] == "none");
  CHECK(j["measure"] == "mr");
  CHECK(j["values"].size() == 32);
  double sum = 0;
  for (double v : j["values"]) sum += v;
  CHECK(j["average"].get<double>() == doctest::Approx(sum / 32));
  CHECK(j["invalid_count"] == r.quality.invalid_count);

  const auto rows = compare_methods(m, {"laplace", "mr"}, SmoothConfig{}, QualityKind::MeanRatio);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].method == "Initial");
  CHECK(rows[1].method == "Laplacian");
  const auto jr = nlohmann::json::parse(to_json(rows));
  CHECK(jr["rows"].size() == 3);
  CHECK(format_table(rows).find("Laplacian") != std::string::npos);

  const auto serial = compare_methods(m, {"laplace", "mr"}, SmoothConfig{}, QualityKind::MeanRatio, false);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(serial[i].quality.values == rows[i].quality.values);
}

TEST_CASE("method names") {
  SmoothConfig cfg;
  CHECK(apply_method("laplace-weighted", cfg));
  CHECK(cfg.method == Method::LaplaceWeighted);
  CHECK(apply_method("lambda3", cfg));
  CHECK(cfg.method == Method::GradAscent);
  CHECK(cfg.quality.kind == QualityKind::Lambda3);
  CHECK_FALSE(apply_method("simplex", cfg));
  CHECK(comparison_methods().size() == 8);
}
