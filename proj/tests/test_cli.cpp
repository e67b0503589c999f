#include "doctest.h"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

fs::path dir() {
  static const fs::path d = [] {
    auto p = fs::temp_directory_path() / "meshopt_cli_test";
    fs::create_directories(p);
    return p;
  }();
  return d;
}

int run(const std::string& args) {
  const std::string cmd = std::string(MESHOPT_CLI) + " " + args + " > " + (dir() / "stdout.txt").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string path(const char* name) { return (dir() / name).string(); }

nlohmann::json read_json(const std::string& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("cli: generate, quality and smooth") {
  REQUIRE(run("generate --kind square_tri --n 6 --out " + path("reg.off")) == 0);
  REQUIRE(run("quality --in " + path("reg.off") + " --measure iq2 --report " + path("reg.json")) == 0);
  // Right isoceles triangles: 0.5 / (c (2 + sqrt 2)^2) with c = 1 / (12 sqrt 3).
  const double right_iq2 = 6 * std::sqrt(3.0) / std::pow(2 + std::sqrt(2.0), 2);
  CHECK(read_json(path("reg.json"))["average"].get<double>() == doctest::Approx(right_iq2).epsilon(1e-12));

  REQUIRE(run("generate --kind disk_tri --n 4 --out " + path("disk.off")) == 0);

  REQUIRE(run("generate --kind square_tri --n 8 --sigma 1 --seed 1 --out " + path("tangled.off")) == 0);
  REQUIRE(run("quality --in " + path("tangled.off") + " --report " + path("t0.json")) == 0);
  CHECK(read_json(path("t0.json"))["invalid_count"].get<int>() > 0);
  REQUIRE(run("smooth --in " + path("tangled.off") + " --method q2 --out " + path("fixed.off") + " --report " +
              path("t1.json") + " --svg " + path("fixed.svg")) == 0);
  const auto j = read_json(path("t1.json"));
  CHECK(j["invalid_count"].get<int>() == 0);
  CHECK(j["method"] == "q2");
  CHECK(fs::file_size(path("fixed.svg")) > 0);

  REQUIRE(run("smooth --in " + path("tangled.off") + " --method laplace --jacobi --iters 5 --out " +
              path("lap.off")) == 0);
  REQUIRE(run("smooth --in " + path("disk.off") + " --method q2 --project circle --normalize global --out " +
              path("disk2.off")) == 0);
}

TEST_CASE("cli: a regular mesh reports mean ratio 1") {
  // Six equilateral triangles around the origin.
  std::ofstream hex(path("hex.off"));
  hex.precision(17);
  hex << "OFF\n7 6 0\n0 0 0\n";
  for (int i = 0; i < 6; ++i) hex << std::cos(i * M_PI / 3) << ' ' << std::sin(i * M_PI / 3) << " 0\n";
  for (int i = 0; i < 6; ++i) hex << "3 0 " << i + 1 << ' ' << (i + 1) % 6 + 1 << '\n';
  hex.close();
  REQUIRE(run("quality --in " + path("hex.off") + " --report " + path("hex.json")) == 0);
  CHECK(read_json(path("hex.json"))["average"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cli: compare and modify") {
  REQUIRE(run("generate --kind ball_tet --n 3 --sigma 0.4 --seed 2 --out " + path("ball.node")) == 0);
  REQUIRE(run("compare --in " + path("ball.node") + " --iters 50 --report " + path("cmp.json")) == 0);
  const auto rows = read_json(path("cmp.json"))["rows"];
  REQUIRE(rows.size() == 9);
  CHECK(rows[0]["method"] == "Initial");
  CHECK(rows[1]["method"] == "Laplacian");

  REQUIRE(run("generate --kind square_tri --n 4 --out " + path("g.off")) == 0);
  CHECK(run("modify --in " + path("g.off") + " --out " + path("g2.off") + " --collapse 6,7") == 0);
  CHECK(run("modify --in " + path("g.off") + " --out " + path("g3.off") + " --split 12") == 1);
  CHECK(run("modify --in " + path("g.off") + " --out " + path("g3.off") + " --enable-split --split 12 --dir 1 0 0") == 0);
  CHECK(run("modify --in " + path("g.off") + " --out " + path("g4.off") + " --collapse 0,1") == 2);
  CHECK(run("modify --in " + path("g.off") + " --out " + path("g5.off") + " --remove-below 0.6 --report " +
            path("mod.json")) == 0);
  const auto mod = read_json(path("mod.json"));
  CHECK(mod["threshold"].get<double>() == 0.6);
  CHECK(mod["irreducible"].empty());
}

TEST_CASE("cli: exit codes") {
  REQUIRE(run("generate --kind square_tri --n 4 --out " + path("g.off")) == 0);
  CHECK(run("") == 1);
  CHECK(run("smooth --in x.off") == 1);
  CHECK(run("smooth --in " + path("g.off") + " --method bogus --out " + path("z.off")) == 1);
  CHECK(run("compare --in " + path("g.off") + " --methods mr nope") == 1);
  CHECK(run("quality --in " + path("does-not-exist.off")) == 2);
  CHECK(run("quality --in " + path("g.off") + " --measure iq3") == 2);
  std::ofstream(path("broken.off")) << "OFF\n1 0 0\n0 0\n";
  CHECK(run("quality --in " + path("broken.off")) == 2);
  CHECK(run("generate --kind square_tri --n 1 --out " + path("n1.off")) == 2);
}
