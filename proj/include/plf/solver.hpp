#pragma once

#include "plf/conformal.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plf {

enum class Gauge { SumZero, PinFirstVertex };

struct SolverOptions {
  double grad_tol = 1e-10; // infinity norm of the objective gradient
  int max_iter = 200;
  Gauge gauge = Gauge::SumZero;
  std::optional<ConformalFactor> init; // default: zero
  double trust_damping = 0.0;          // baseline mu added to the reduced Hessian
  double u_bound = 50.0;               // divergence guard on |u|_inf after re-centering
};

struct SolveResult {
  ConformalFactor u_star;  // normalized so A_tot(u_star) = 1
  CurvatureReport report;  // of the final Delaunay metric
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;
  double grad_norm = 0;    // final |grad|_inf
  double k_tol = 0;        // 10 grad_tol / min_i A_i at the solution
  std::string status;      // reason when not converged
};

// Finds a critical point of F = E - pi chi log A_tot (chi != 0), or a
// minimum of E with W == 0 (chi == 0): a metric of constant discrete
// Gaussian curvature in the conformal class of base. Newton iteration with
// gauge projection, positive definite modification and Armijo backtracking.
// Throws Divergence when |u| exceeds opts.u_bound; iteration limit and
// line-search failure are reported via converged/status.
SolveResult uniformize(const MarkedSurface& s, const DiscreteMetric& base,
                       const SolverOptions& opts = {});

// Uniform grid evaluation of a one-parameter family objective.
std::vector<std::pair<double, double>> scan_objective(
    const std::function<double(double)>& family_eval, double lo, double hi, int samples);

// Bracketed sign changes refined by bisection to |interval| <= root_tol.
// Even-multiplicity tangential zeros may be missed.
std::vector<double> find_roots(const std::function<double(double)>& family_eval,
                               double lo, double hi, int samples, double root_tol);

} // namespace plf
