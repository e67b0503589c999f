// meshopt command line: generate, smooth, quality, modify, compare.

#include "meshopt/generate.hpp"
#include "meshopt/io.hpp"
#include "meshopt/methods.hpp"
#include "meshopt/report.hpp"
#include "meshopt/svg.hpp"
#include "meshopt/topo.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace meshopt;

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text << '\n';
}

QualityKind parse_kind(const std::string& name) {
  const auto k = parse_quality_kind(name);
  if (!k) throw UsageError("unknown measure '" + name + "'");
  return *k;
}

// mr reads as the tet mean ratio on tet meshes.
QualityKind default_measure(const Mesh&) { return QualityKind::MeanRatio; }

std::pair<Index, Index> parse_pair(const std::string& s) {
  std::istringstream in(s);
  Index a = -1, b = -1;
  char comma = 0;
  if (!(in >> a >> comma >> b) || comma != ',') throw UsageError("expected 'a,b', got '" + s + "'");
  return {a, b};
}

// Geometry list and tags for --project.
void setup_projection(Mesh& m, const std::string& kind, SmoothConfig& cfg) {
  cfg.project = true;
  if (kind == "circle") {
    cfg.geometries = {ImplicitCircle{}};
  } else if (kind == "sphere") {
    cfg.geometries = {ImplicitSphere{}};
  } else if (kind == "polyline") {
    // Bounding rectangle of the mesh; its corners stay pinned.
    const Vec3d lo = m.points().rowwise().minCoeff(), hi = m.points().rowwise().maxCoeff();
    cfg.geometries = {Polyline2D{{{lo.x(), lo.y()}, {hi.x(), lo.y()}, {hi.x(), hi.y()}, {lo.x(), hi.y()}}, true}};
    for (Index v = 0; v < m.num_vertices(); ++v) {
      if (!m.is_fixed(v)) continue;
      const Vec3d p = m.point(v);
      const bool corner = (p.x() == lo.x() || p.x() == hi.x()) && (p.y() == lo.y() || p.y() == hi.y());
      m.set_geometry_tag(v, corner ? -1 : 0);
    }
    return;
  } else {
    throw UsageError("unknown projection '" + kind + "'");
  }
  for (Index v = 0; v < m.num_vertices(); ++v)
    if (m.is_fixed(v) && m.geometry_tag(v) < 0) m.set_geometry_tag(v, 0);
}

Normalization parse_normalization(const std::string& s) {
  if (s == "none") return Normalization::None;
  if (s == "global") return Normalization::Global;
  if (s == "element") return Normalization::PerElement;
  throw UsageError("unknown normalization '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mesh smoothing, untangling and quality tools"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a generated mesh");
  std::string gen_kind, gen_out;
  int gen_n = 8;
  double gen_sigma = 0;
  std::uint64_t gen_seed = 1;
  gen->add_option("--kind", gen_kind, "square_tri | square_mixed | disk_tri | ball_tet")->required();
  gen->add_option("--n", gen_n, "Resolution (>= 2)");
  gen->add_option("--sigma", gen_sigma, "Perturbation amplitude in mean edge lengths");
  gen->add_option("--seed", gen_seed, "Perturbation seed");
  gen->add_option("--out", gen_out, "Output mesh (.off, or .node/.ele for tets)")->required();

  // smooth
  auto* sm = app.add_subcommand("smooth", "Smooth or untangle a mesh");
  std::string sm_in, sm_method = "q2", sm_out, sm_report, sm_svg, sm_project, sm_norm = "none", sm_measure;
  bool sm_adaptive = false, sm_jacobi = false;
  SmoothConfig sm_cfg;
  sm->add_option("--in", sm_in)->required();
  sm->add_option("--method", sm_method, "laplace | laplace-weighted | q2 | q3 | lambda | lambda1..5 | mr | sqrt-mr | ...");
  sm->add_flag("--adaptive-weights", sm_adaptive);
  sm->add_option("--project", sm_project, "circle | sphere | polyline");
  sm->add_option("--iters", sm_cfg.max_iters);
  sm->add_option("--tol", sm_cfg.conv_tol, "Max displacement per sweep for convergence");
  sm->add_option("--normalize", sm_norm, "none | global | element");
  sm->add_flag("--jacobi", sm_jacobi, "Simultaneous Laplacian updates");
  sm->add_option("--measure", sm_measure, "Measure in the report (default mr)");
  sm->add_option("--out", sm_out)->required();
  sm->add_option("--report", sm_report);
  sm->add_option("--svg", sm_svg);

  // quality
  auto* qu = app.add_subcommand("quality", "Report element quality");
  std::string qu_in, qu_measure = "mr", qu_report, qu_svg;
  qu->add_option("--in", qu_in)->required();
  qu->add_option("--measure", qu_measure, "mr | sqrt-mr | iq2 | iq3");
  qu->add_option("--report", qu_report);
  qu->add_option("--svg", qu_svg);

  // modify
  auto* mo = app.add_subcommand("modify", "Local topology changes");
  std::string mo_in, mo_out, mo_report, mo_collapse, mo_swap;
  double mo_below = -1;
  Index mo_split = -1;
  std::vector<double> mo_dir{1, 0, 0};
  bool mo_enable_split = false, mo_swaps = false;
  int mo_iters = 1000;
  mo->add_option("--in", mo_in)->required();
  mo->add_option("--out", mo_out)->required();
  mo->add_option("--remove-below", mo_below, "Collapse elements with iq2 below this value");
  mo->add_flag("--swaps", mo_swaps, "Try edge swaps before collapsing");
  mo->add_option("--iters", mo_iters, "Smoothing iterations per phase");
  mo->add_option("--collapse", mo_collapse, "Collapse edge a,b");
  mo->add_option("--swap", mo_swap, "Swap edge a,b");
  mo->add_flag("--enable-split", mo_enable_split, "Allow --split");
  mo->add_option("--split", mo_split, "Split vertex v (needs --enable-split)");
  mo->add_option("--dir", mo_dir, "Split direction x y z")->expected(3);
  mo->add_option("--report", mo_report);

  // compare
  auto* cmp = app.add_subcommand("compare", "Run several methods on copies of one mesh");
  std::string cmp_in, cmp_report, cmp_measure = "mr";
  std::vector<std::string> cmp_methods = comparison_methods();
  SmoothConfig cmp_cfg;
  bool cmp_serial = false;
  cmp->add_option("--in", cmp_in)->required();
  cmp->add_option("--methods", cmp_methods, "Methods (default: laplace lambda1..5 mr sqrt-mr)");
  cmp->add_option("--measure", cmp_measure);
  cmp->add_option("--iters", cmp_cfg.max_iters);
  cmp->add_option("--tol", cmp_cfg.conv_tol);
  cmp->add_flag("--serial", cmp_serial, "Run methods one after another");
  cmp->add_option("--report", cmp_report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) {
      Mesh m = generate(gen_kind, gen_n);
      if (gen_sigma > 0) m = perturbed(m, gen_sigma, gen_seed);
      save_mesh(m, gen_out);
    } else if (*sm) {
      Mesh m = load_mesh(sm_in);
      SmoothConfig cfg = sm_cfg;
      if (!apply_method(sm_method, cfg)) throw UsageError("unknown method '" + sm_method + "'");
      cfg.adaptive_weights = sm_adaptive;
      cfg.schedule = sm_jacobi ? Schedule::Jacobi : Schedule::GaussSeidel;
      cfg.normalization = parse_normalization(sm_norm);
      if (!sm_project.empty()) setup_projection(m, sm_project, cfg);
      const QualityKind measure = sm_measure.empty() ? default_measure(m) : parse_kind(sm_measure);
      const RunReport r = run_method(m, sm_method, cfg, measure);
      save_mesh(m, sm_out);
      if (!sm_report.empty()) write_text(sm_report, to_json(r));
      if (!sm_svg.empty()) render_svg(m, measure, sm_svg);
      std::cout << format_table({r});
    } else if (*qu) {
      const Mesh m = load_mesh(qu_in);
      RunReport r;
      r.method = "none";
      r.quality = quality_report(m, parse_kind(qu_measure));
      if (!qu_report.empty()) write_text(qu_report, to_json(r));
      if (!qu_svg.empty()) render_svg(m, r.quality.measure, qu_svg);
      std::cout << format_table({r});
    } else if (*mo) {
      Mesh m = load_mesh(mo_in);
      auto check = [](const TopoResult& r) {
        if (!r) throw TopologyError("operation rejected: " + r.reason);
      };
      if (!mo_collapse.empty()) {
        const auto [a, b] = parse_pair(mo_collapse);
        check(edge_collapse(m, a, b));
      }
      if (!mo_swap.empty()) {
        const auto [a, b] = parse_pair(mo_swap);
        check(edge_swap(m, a, b));
      }
      if (mo_split >= 0) {
        if (!mo_enable_split) throw UsageError("--split requires --enable-split");
        check(vertex_split(m, mo_split, Vec3d(mo_dir[0], mo_dir[1], mo_dir[2])));
      }
      if (mo_below >= 0) {
        RemovalOptions opts;
        opts.threshold = mo_below;
        opts.swaps = mo_swaps;
        opts.smoothing.max_iters = mo_iters;
        const auto start = std::chrono::steady_clock::now();
        const RemovalLog log = remove_bad_elements(m, opts);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        for (std::size_t i = 0; i < log.phases.size(); ++i)
          std::cout << "phase " << i << ": " << log.phases[i].bad << " below threshold, " << log.phases[i].collapses
                    << " collapses\n";
        std::cout << (log.success ? "all elements at or above threshold\n" : "irreducible elements remain\n");
        if (!mo_report.empty()) {
          RunReport r;
          r.method = "remove-below";
          r.quality = quality_report(m, QualityKind::Iq2);
          r.iterations = static_cast<int>(log.phases.size());
          r.converged = log.success;
          r.wall_ms = ms;
          nlohmann::json out = nlohmann::json::parse(to_json(r));
          out["threshold"] = mo_below;
          out["irreducible"] = log.irreducible;
          nlohmann::json phases = nlohmann::json::array();
          for (const auto& p : log.phases) phases.push_back({{"below", p.bad}, {"collapses", p.collapses}});
          out["phases"] = phases;
          write_text(mo_report, out.dump(2));
        }
      }
      save_mesh(m, mo_out);
    } else if (*cmp) {
      for (const auto& name : cmp_methods) {
        SmoothConfig probe;
        if (!apply_method(name, probe)) throw UsageError("unknown method '" + name + "'");
      }
      const Mesh m = load_mesh(cmp_in);
      const auto rows = compare_methods(m, cmp_methods, cmp_cfg, parse_kind(cmp_measure), !cmp_serial);
      if (!cmp_report.empty()) write_text(cmp_report, to_json(rows));
      std::cout << format_table(rows);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return 0;
}
