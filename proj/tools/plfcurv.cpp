#include "plf/families.hpp"
#include "plf/io.hpp"
#include "plf/solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>

namespace {

int exit_code_for(const plf::Error& e) {
  switch (e.kind()) {
    case plf::ErrorKind::ParseError:
    case plf::ErrorKind::InvalidSurface:
    case plf::ErrorKind::InvalidConfig:
      return 2;
    case plf::ErrorKind::InvalidMetric:
    case plf::ErrorKind::Degenerate:
    case plf::ErrorKind::NotDelaunay:
      return 3;
    case plf::ErrorKind::NonConvergence:
      return 4;
    case plf::ErrorKind::Divergence:
    case plf::ErrorKind::FlipLimit:
      return 5;
  }
  return 1;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    plf::write_file_atomic(out_path, content);
}

// family objective by name; validation of (b0, c0) happens inside
std::function<double(double)> family_fn(const std::string& family, double b0, double c0) {
  if (family == "tet")
    return [=](double v) { return plf::eval_g({b0, c0, v}); };
  if (family == "genus2")
    return [=](double v) { return plf::eval_h({b0, c0, v}); };
  throw plf::Error(plf::ErrorKind::InvalidConfig, "unknown family '" + family + "'");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete Gaussian curvature and constant-curvature uniformization "
               "on piecewise flat surfaces"};
  app.require_subcommand(1);

  std::string in_path, out_path, out_prefix, init_path;
  std::string family = "tet";
  double b0 = 1.6, c0 = 1.75, v = 0.0;
  double tol = 1e-10, root_tol = 1e-12;
  int samples = 401, max_iter = 200;
  std::string gauge = "sum-zero";

  auto* c_curv = app.add_subcommand("curvature", "per-vertex W, A, K report");
  c_curv->add_option("file", in_path)->required();
  c_curv->add_option("--out", out_path);

  auto* c_unif = app.add_subcommand("uniformize", "find the constant-curvature metric");
  c_unif->add_option("file", in_path)->required();
  c_unif->add_option("--tol", tol);
  c_unif->add_option("--max-iter", max_iter);
  c_unif->add_option("--gauge", gauge)->check(CLI::IsMember({"sum-zero", "pin"}));
  c_unif->add_option("--init", init_path);
  c_unif->add_option("--out-prefix", out_prefix);

  auto* c_scan = app.add_subcommand("scan", "sample the family objective over S");
  c_scan->add_option("--family", family)->check(CLI::IsMember({"tet", "genus2"}))->required();
  c_scan->add_option("--b0", b0)->required();
  c_scan->add_option("--c0", c0)->required();
  c_scan->add_option("--samples", samples);
  c_scan->add_option("--out", out_path);

  auto* c_roots = app.add_subcommand("roots", "constant-curvature parameters of a family");
  c_roots->add_option("--family", family)->check(CLI::IsMember({"tet", "genus2"}))->required();
  c_roots->add_option("--b0", b0)->required();
  c_roots->add_option("--c0", c0)->required();
  c_roots->add_option("--samples", samples);
  c_roots->add_option("--root-tol", root_tol);
  c_roots->add_option("--out", out_path);

  std::string obj_in, obj_out;
  auto* c_obj = app.add_subcommand("import-obj", "convert a closed triangle mesh");
  c_obj->add_option("in", obj_in)->required();
  c_obj->add_option("out", obj_out)->required();

  auto* c_fam = app.add_subcommand("family", "emit a family member as a surface file");
  c_fam->add_option("--family", family)->check(CLI::IsMember({"tet", "genus2"}))->required();
  c_fam->add_option("--b0", b0)->required();
  c_fam->add_option("--c0", c0)->required();
  c_fam->add_option("--v", v);
  c_fam->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_curv) {
      const plf::SurfaceBundle b = plf::load_surface_file(in_path);
      const plf::CurvatureReport r = plf::curvature_report(b.surface, b.metric);
      emit(out_path, plf::curvature_report_text(r));
    } else if (*c_unif) {
      const plf::SurfaceBundle b = plf::load_surface_file(in_path);
      plf::SolverOptions opts;
      opts.grad_tol = tol;
      opts.max_iter = max_iter;
      opts.gauge = gauge == "pin" ? plf::Gauge::PinFirstVertex : plf::Gauge::SumZero;
      if (!init_path.empty()) {
        std::ifstream in(init_path);
        if (!in)
          throw plf::Error(plf::ErrorKind::ParseError, "cannot open " + init_path);
        opts.init = plf::parse_conformal_factor(in, b.surface.vertex_count(), init_path);
      }
      const plf::SolveResult res = plf::uniformize(b.surface, b.metric, opts);
      std::cout << "iterations " << res.iterations << "\n";
      std::cout << "grad_norm " << plf::format_number(res.grad_norm) << "\n";
      const std::string prefix = out_prefix.empty() ? in_path : out_prefix;
      plf::write_file_atomic(prefix + ".u", plf::conformal_factor_text(res.u_star));
      plf::write_file_atomic(prefix + ".report", plf::curvature_report_text(res.report));
      if (!res.converged) {
        std::cerr << "error: " << res.status << "\n";
        return 4;
      }
    } else if (*c_scan) {
      const double L = plf::family_interval(b0, c0);
      plf::validate_family_config({b0, c0, 0.0});
      const auto grid = plf::scan_objective(family_fn(family, b0, c0), -L, L, samples);
      std::string text = "# family=" + family + " b0=" + plf::format_number(b0) +
                         " c0=" + plf::format_number(c0) +
                         " interval=[-" + plf::format_number(L) + "," +
                         plf::format_number(L) + "] endpoints_delaunay_degenerate=1\n";
      for (const auto& [x, y] : grid)
        text += plf::format_number(x) + " " + plf::format_number(y) + "\n";
      emit(out_path, text);
    } else if (*c_roots) {
      const double L = plf::family_interval(b0, c0);
      plf::validate_family_config({b0, c0, 0.0});
      const auto roots =
          plf::find_roots(family_fn(family, b0, c0), -L, L, samples, root_tol);
      std::string text;
      char buf[40];
      for (double r : roots) {
        std::snprintf(buf, sizeof(buf), "%.12f", r);
        text += buf;
        text += "\n";
      }
      emit(out_path, text);
    } else if (*c_obj) {
      const plf::ObjImport imp = plf::import_obj(obj_in);
      for (int e : imp.non_delaunay_edges) {
        const auto ep = imp.bundle.surface.edge_endpoints(e);
        std::cerr << "warning: edge (" << ep[0] + 1 << "," << ep[1] + 1
                  << ") of the induced metric is not Delaunay\n";
      }
      plf::write_file_atomic(
          obj_out, plf::serialize_surface_file(imp.bundle.surface, imp.bundle.metric));
    } else if (*c_fam) {
      const plf::FamilyMember fm = family == "tet" ? plf::tetrahedron_family({b0, c0, v})
                                                   : plf::genus2_family({b0, c0, v});
      emit(out_path, plf::serialize_surface_file(fm.surface, fm.metric));
    }
  } catch (const plf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
