#pragma once

#include "plf/conformal.hpp"

#include <Eigen/SparseCore>

#include <optional>

namespace plf {

// Value, gradient and (optionally) sparse symmetric Hessian of one of the
// variational building blocks, evaluated at a conformal factor u.
struct EnergyEval {
  double value = 0;
  Eigen::VectorXd gradient;
  std::optional<Eigen::SparseMatrix<double>> hessian;
};

// E(u) = sum_faces (2 f(lam/2,...) - pi/2 (lam+lam+lam)) + 2 pi sum_i u_i,
// evaluated on the Delaunay triangulation of d(u). grad_i = W_i;
// Hessian is the cot-Laplacian quadratic form.
EnergyEval energy_E(const MarkedSurface& s, const DiscreteMetric& base,
                    const ConformalFactor& u, bool with_hessian = true);

// A_tot(u) = total area on the Delaunay triangulation of d(u).
// grad_i = 2 A_i; Hessian from the circumcentric edge quantities.
EnergyEval total_area(const MarkedSurface& s, const DiscreteMetric& base,
                      const ConformalFactor& u, bool with_hessian = true);

// F(u) = E(u) - pi chi log A_tot(u); shift invariant, critical points are
// the constant discrete Gaussian curvature metrics.
EnergyEval energy_F(const MarkedSurface& s, const DiscreteMetric& base,
                    const ConformalFactor& u, bool with_hessian = true);

} // namespace plf
