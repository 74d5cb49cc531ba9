#include "plf/solver.hpp"

#include "plf/energy.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace plf {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXd gauge_basis(int n, Gauge gauge) {
  if (gauge == Gauge::PinFirstVertex) {
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n - 1);
    for (int i = 1; i < n; ++i) Q(i, i - 1) = 1.0;
    return Q;
  }
  // orthonormal basis of the complement of (1,...,1)
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  Eigen::MatrixXd Qfull = qr.householderQ();
  return Qfull.rightCols(n - 1);
}

void recenter(ConformalFactor& u, Gauge gauge) {
  if (gauge == Gauge::SumZero)
    u.array() -= u.mean();
  else
    u.array() -= u[0];
}

} // namespace

SolveResult uniformize(const MarkedSurface& s, const DiscreteMetric& base,
                       const SolverOptions& opts) {
  if (!(opts.grad_tol > 0) || opts.max_iter < 1)
    throw Error(ErrorKind::InvalidConfig, "grad_tol must be > 0 and max_iter >= 1");
  const int n = s.vertex_count();
  const int chi = s.euler_characteristic();

  // chi != 0: critical points of F. chi == 0: minimize E itself, where the
  // constant-curvature condition degenerates to W == 0.
  auto objective = [&](const ConformalFactor& u, bool with_hessian) {
    return chi != 0 ? energy_F(s, base, u, with_hessian)
                    : energy_E(s, base, u, with_hessian);
  };

  ConformalFactor u = opts.init.value_or(Eigen::VectorXd::Zero(n));
  if (u.size() != n)
    throw Error(ErrorKind::InvalidConfig, "init vector has wrong dimension");
  recenter(u, opts.gauge);

  const Eigen::MatrixXd Q = gauge_basis(n, opts.gauge);

  SolveResult res;
  res.status = "iteration limit";
  EnergyEval cur = objective(u, true);
  res.objective_trace.push_back(cur.value);

  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    res.iterations = iter;
    res.grad_norm = cur.gradient.cwiseAbs().maxCoeff();
    if (res.grad_norm <= opts.grad_tol) {
      res.converged = true;
      res.status = "converged";
      break;
    }
    if (iter == opts.max_iter) break;
    if (n == 1) {
      res.status = "gauge leaves no degrees of freedom";
      break;
    }

    // reduced Newton system on the gauge subspace
    const Eigen::MatrixXd H = Eigen::MatrixXd(*cur.hessian);
    const Eigen::MatrixXd Hr = Q.transpose() * H * Q;
    const Eigen::VectorXd gr = Q.transpose() * cur.gradient;

    const double scale = std::max(Hr.diagonal().cwiseAbs().maxCoeff(), 1.0);
    double mu = opts.trust_damping;
    Eigen::VectorXd sr;
    bool ok = false;
    for (int attempt = 0; attempt < 64; ++attempt) {
      Eigen::LLT<Eigen::MatrixXd> llt(
          Hr + mu * Eigen::MatrixXd::Identity(n - 1, n - 1));
      if (llt.info() == Eigen::Success) {
        sr = llt.solve(-gr);
        if (gr.dot(sr) < 0) {
          ok = true;
          break;
        }
      }
      mu = (mu == 0.0) ? 1e-10 * scale : 2.0 * mu;
    }
    if (!ok) {
      res.status = "could not produce a descent direction";
      break;
    }
    const Eigen::VectorXd step = Q * sr;
    const double slope = cur.gradient.dot(step);

    // Armijo backtracking; evaluation failures reject the step as too long
    double t = 1.0;
    bool accepted = false;
    while (t >= 1e-14) {
      try {
        const EnergyEval trial = objective(u + t * step, false);
        if (trial.value <= cur.value + 1e-4 * t * slope) {
          accepted = true;
          break;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Degenerate && e.kind() != ErrorKind::InvalidMetric &&
            e.kind() != ErrorKind::FlipLimit)
          throw;
      }
      t *= 0.5;
    }
    if (!accepted) {
      res.status = "line search failed (degenerate metric encountered)";
      break;
    }

    u += t * step;
    recenter(u, opts.gauge);
    if (u.cwiseAbs().maxCoeff() > opts.u_bound)
      throw Error(ErrorKind::Divergence,
                  "|u| exceeded the divergence bound " + std::to_string(opts.u_bound));
    cur = objective(u, true);
    res.objective_trace.push_back(cur.value);
  }

  // normalize to unit total area; W is shift invariant, so convergence holds
  const EnergyEval a = total_area(s, base, u, false);
  u.array() += -0.5 * std::log(a.value);
  res.u_star = u;

  const DelaunayResult final_state = conformal_delaunay(s, base, u);
  res.report = curvature_report(final_state.surface, final_state.metric);
  res.k_tol = 10.0 * opts.grad_tol / res.report.A.minCoeff();

  if (res.converged) {
    const double kdev = (res.report.K.array() - 2.0 * kPi * chi).abs().maxCoeff();
    if (kdev > res.k_tol) {
      res.converged = false;
      res.status = "curvature deviation " + std::to_string(kdev) +
                   " exceeds k_tol " + std::to_string(res.k_tol);
    }
  }
  return res;
}

std::vector<std::pair<double, double>> scan_objective(
    const std::function<double(double)>& family_eval, double lo, double hi, int samples) {
  if (samples < 2) throw Error(ErrorKind::InvalidConfig, "scan needs at least 2 samples");
  std::vector<std::pair<double, double>> out;
  out.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double v =
        (i == samples - 1) ? hi : lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
    out.emplace_back(v, family_eval(v));
  }
  return out;
}

std::vector<double> find_roots(const std::function<double(double)>& family_eval,
                               double lo, double hi, int samples, double root_tol) {
  if (!(root_tol > 0)) throw Error(ErrorKind::InvalidConfig, "root_tol must be > 0");
  const auto grid = scan_objective(family_eval, lo, hi, samples);

  double scale = 0;
  for (const auto& [v, y] : grid) scale = std::max(scale, std::fabs(y));
  const double zero_band = scale * 1e-13;

  std::vector<double> roots;
  auto is_zero = [&](double y) { return std::fabs(y) <= zero_band; };

  for (size_t i = 0; i < grid.size(); ++i) {
    if (is_zero(grid[i].second)) {
      roots.push_back(grid[i].first);
      continue;
    }
    if (i + 1 >= grid.size()) break;
    const auto& [va, ya] = grid[i];
    const auto& [vb, yb] = grid[i + 1];
    if (is_zero(yb) || ya * yb > 0) continue;
    // bisect the bracket
    double a = va, b = vb, fa = ya;
    while (b - a > root_tol) {
      const double mid = 0.5 * (a + b);
      const double fm = family_eval(mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if (fa * fm < 0) {
        b = mid;
      } else {
        a = mid;
        fa = fm;
      }
    }
    roots.push_back(0.5 * (a + b));
  }

  std::sort(roots.begin(), roots.end());
  // merge duplicates closer than the resolution of the bisection
  std::vector<double> merged;
  for (double r : roots)
    if (merged.empty() || r - merged.back() > 10.0 * root_tol) merged.push_back(r);
  return merged;
}

} // namespace plf
