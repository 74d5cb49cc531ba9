#include "plf/energy.hpp"

#include "plf/geometry.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace plf;

namespace {

constexpr double kPi = 3.14159265358979323846;

DiscreteMetric unit_metric(const MarkedSurface& s) {
  DiscreteMetric m;
  m.len.assign(s.edge_count(), 1.0);
  return m;
}

// forward differences of a scalar energy in each coordinate
Eigen::VectorXd fd_gradient(const std::function<double(const ConformalFactor&)>& f,
                            const ConformalFactor& u, double h) {
  Eigen::VectorXd g(u.size());
  for (int i = 0; i < u.size(); ++i) {
    ConformalFactor up = u, um = u;
    up[i] += h;
    um[i] -= h;
    g[i] = (f(up) - f(um)) / (2 * h);
  }
  return g;
}

} // namespace

TEST_CASE("energy_E on the regular tetrahedron") {
  const auto s = oracle::tetrahedron_surface();
  const auto m = unit_metric(s);
  const auto e = energy_E(s, m, Eigen::VectorXd::Zero(4));
  // lambda = 0 on all edges, so the linear terms vanish: E = 8 f(0,0,0)
  CHECK(e.value == doctest::Approx(24.0 * lobachevsky(kPi / 3)).epsilon(1e-13));
  CHECK(e.value == doctest::Approx(8.1195328512772291).epsilon(1e-12));
  for (int v = 0; v < 4; ++v) CHECK(e.gradient[v] == doctest::Approx(kPi).epsilon(1e-13));
}

TEST_CASE("total_area on the regular tetrahedron") {
  const auto s = oracle::tetrahedron_surface();
  const auto m = unit_metric(s);
  const auto a = total_area(s, m, Eigen::VectorXd::Zero(4));
  CHECK(a.value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  for (int v = 0; v < 4; ++v)
    CHECK(a.gradient[v] == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-13));
}

TEST_CASE("shift identities") {
  const auto s = oracle::tetrahedron_surface();
  const auto m = unit_metric(s);
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> dc(-2.0, 2.0);
  for (int it = 0; it < 20; ++it) {
    const auto u = oracle::random_u(4, rng, 0.3);
    const double c = dc(rng);
    const ConformalFactor uc = u + Eigen::VectorXd::Constant(4, c);

    const double e0 = energy_E(s, m, u, false).value;
    const double e1 = energy_E(s, m, uc, false).value;
    CHECK(std::fabs(e1 - e0 - 2 * kPi * 2 * c) < 1e-9); // chi = 2

    const double a0 = total_area(s, m, u, false).value;
    const double a1 = total_area(s, m, uc, false).value;
    CHECK(std::fabs(a1 - std::exp(2 * c) * a0) < 1e-9 * a1);

    const double f0 = energy_F(s, m, u, false).value;
    const double f1 = energy_F(s, m, uc, false).value;
    CHECK(std::fabs(f1 - f0) < 1e-9);
  }
}

TEST_CASE("gradients match finite differences") {
  std::mt19937 rng(53);
  const auto surfaces = {oracle::tetrahedron_surface(), oracle::octahedron_surface()};
  for (const auto& s : surfaces) {
    for (int it = 0; it < 8; ++it) {
      const auto m = oracle::perturbed_unit_metric(s, rng, 0.05);
      const auto u = oracle::random_u(s.vertex_count(), rng, 0.4);

      const auto e = energy_E(s, m, u, false);
      const auto fd_e = fd_gradient(
          [&](const ConformalFactor& w) { return energy_E(s, m, w, false).value; }, u, 1e-6);
      for (int i = 0; i < u.size(); ++i)
        CHECK(std::fabs(fd_e[i] - e.gradient[i]) < 1e-5 * std::max(1.0, std::fabs(e.gradient[i])));

      const auto a = total_area(s, m, u, false);
      const auto fd_a = fd_gradient(
          [&](const ConformalFactor& w) { return total_area(s, m, w, false).value; }, u, 1e-6);
      for (int i = 0; i < u.size(); ++i)
        CHECK(std::fabs(fd_a[i] - a.gradient[i]) < 1e-5 * std::max(1.0, std::fabs(a.gradient[i])));

      const auto f = energy_F(s, m, u, false);
      const auto fd_f = fd_gradient(
          [&](const ConformalFactor& w) { return energy_F(s, m, w, false).value; }, u, 1e-6);
      for (int i = 0; i < u.size(); ++i)
        CHECK(std::fabs(fd_f[i] - f.gradient[i]) < 1e-5 * std::max(1.0, std::fabs(f.gradient[i])));
    }
  }
}

TEST_CASE("hessians match finite differences of gradients") {
  std::mt19937 rng(59);
  const auto s = oracle::octahedron_surface();
  for (int it = 0; it < 4; ++it) {
    const auto m = oracle::perturbed_unit_metric(s, rng, 0.05);
    const auto u = oracle::random_u(s.vertex_count(), rng, 0.3);
    const double h = 1e-6;

    for (int which = 0; which < 3; ++which) {
      const auto eval = [&](const ConformalFactor& w, bool hess) {
        return which == 0 ? energy_E(s, m, w, hess)
               : which == 1 ? total_area(s, m, w, hess)
                            : energy_F(s, m, w, hess);
      };
      const auto at_u = eval(u, true);
      const Eigen::MatrixXd H = Eigen::MatrixXd(*at_u.hessian);
      CHECK((H - H.transpose()).cwiseAbs().maxCoeff() < 1e-12);
      for (int j = 0; j < u.size(); ++j) {
        ConformalFactor up = u, um = u;
        up[j] += h;
        um[j] -= h;
        const Eigen::VectorXd col =
            (eval(up, false).gradient - eval(um, false).gradient) / (2 * h);
        for (int i = 0; i < u.size(); ++i)
          CHECK(std::fabs(col[i] - H(i, j)) < 1e-4 * std::max(1.0, std::fabs(H(i, j))));
      }
    }
  }
}

TEST_CASE("E-Hessian is a PSD cot-Laplacian with the shift kernel") {
  const auto s = oracle::tetrahedron_surface();
  const auto m = unit_metric(s);
  const auto e = energy_E(s, m, Eigen::VectorXd::Zero(4));
  const Eigen::MatrixXd H = Eigen::MatrixXd(*e.hessian);
  CHECK((H * Eigen::VectorXd::Ones(4)).cwiseAbs().maxCoeff() < 1e-9);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  CHECK(es.eigenvalues()[0] > -1e-8);
  CHECK(es.eigenvalues()[1] > 1e-8); // kernel is one-dimensional at a generic point

  std::mt19937 rng(61);
  for (int it = 0; it < 10; ++it) {
    const auto oct = oracle::octahedron_surface();
    const auto mo = oracle::perturbed_unit_metric(oct, rng, 0.05);
    const auto u = oracle::random_u(6, rng, 0.3);
    const auto eo = energy_E(oct, mo, u);
    const Eigen::MatrixXd Ho = Eigen::MatrixXd(*eo.hessian);
    CHECK((Ho * Eigen::VectorXd::Ones(6)).cwiseAbs().maxCoeff() < 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eso(Ho);
    CHECK(eso.eigenvalues()[0] > -1e-8);
  }
}

TEST_CASE("gradient of E sums to 2 pi chi") {
  std::mt19937 rng(67);
  for (const auto& s : {oracle::tetrahedron_surface(), oracle::octahedron_surface(),
                        oracle::torus_surface()}) {
    const auto m = oracle::perturbed_unit_metric(s, rng, 0.02);
    const auto u = oracle::random_u(s.vertex_count(), rng, 0.3);
    const auto e = energy_E(s, m, u, false);
    CHECK(std::fabs(e.gradient.sum() - 2 * kPi * s.euler_characteristic()) < 1e-9);
  }
}

TEST_CASE("values and gradients agree across the two triangulations at a cell boundary") {
  // double of a cyclic quadrilateral: both diagonals are Delaunay-degenerate,
  // so both front triangulations realize the same metric
  const auto qd = oracle::cyclic_quad_double(1.0, 1.2, 0.9, 1.4);

  auto flipped_surface = qd.surface;
  auto flipped_metric = qd.metric;
  flipped_surface.flip_edge_in_place(2);
  flipped_metric.len[2] = qd.diag24;

  const auto u = Eigen::VectorXd::Zero(4);
  const auto e0 = energy_E(qd.surface, qd.metric, u);
  const auto e1 = energy_E(flipped_surface, flipped_metric, u);
  CHECK(std::fabs(e0.value - e1.value) < 1e-9);
  CHECK((e0.gradient - e1.gradient).cwiseAbs().maxCoeff() < 1e-8);

  const auto a0 = total_area(qd.surface, qd.metric, u);
  const auto a1 = total_area(flipped_surface, flipped_metric, u);
  CHECK(std::fabs(a0.value - a1.value) < 1e-9);
  CHECK((a0.gradient - a1.gradient).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("total area underflow is an error") {
  const auto s = oracle::tetrahedron_surface();
  const auto m = unit_metric(s);
  CHECK_THROWS_AS(energy_F(s, m, Eigen::VectorXd::Constant(4, -400.0), false), Error);
}
