#include "plf/geometry.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace plf;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("triangle_angles on reference triangles") {
  auto eq = triangle_angles({1, 1, 1});
  CHECK(eq.alpha == doctest::Approx(kPi / 3).epsilon(1e-14));
  CHECK(eq.beta == doctest::Approx(kPi / 3).epsilon(1e-14));
  CHECK(eq.gamma == doctest::Approx(kPi / 3).epsilon(1e-14));

  auto iso = triangle_angles({1, 1, std::sqrt(2.0)});
  CHECK(iso.alpha == doctest::Approx(kPi / 4).epsilon(1e-14));
  CHECK(iso.beta == doctest::Approx(kPi / 4).epsilon(1e-14));
  CHECK(iso.gamma == doctest::Approx(kPi / 2).epsilon(1e-14));

  auto egy = triangle_angles({3, 4, 5});
  CHECK(egy.alpha == doctest::Approx(std::asin(3.0 / 5)).epsilon(1e-14));
  CHECK(egy.beta == doctest::Approx(std::asin(4.0 / 5)).epsilon(1e-14));
  CHECK(egy.gamma == doctest::Approx(kPi / 2).epsilon(1e-14));

  CHECK_THROWS_AS(triangle_angles({1, 1, 3}), Error);
}

TEST_CASE("triangle_angles properties: angle sum and law of sines") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(0.1, 10.0);
  for (int it = 0; it < 500; ++it) {
    const double a = d(rng), b = d(rng), c = d(rng);
    if (!triangle_valid(a, b, c)) continue;
    const auto ang = triangle_angles({a, b, c});
    CHECK(std::fabs(ang.alpha + ang.beta + ang.gamma - kPi) < 1e-12);
    const double ratio = a / std::sin(ang.alpha);
    CHECK(b / std::sin(ang.beta) == doctest::Approx(ratio).epsilon(1e-10));
    CHECK(c / std::sin(ang.gamma) == doctest::Approx(ratio).epsilon(1e-10));
  }
}

TEST_CASE("lobachevsky special values against the quadrature oracle") {
  CHECK(lobachevsky(0.0) == 0.0);
  CHECK(std::fabs(lobachevsky(kPi / 2)) < 1e-13);
  // frozen from the oracle; the value is the Lobachevsky maximum identity
  // 3 L(pi/3) = 2 L(pi/6)
  CHECK(lobachevsky(kPi / 3) == doctest::Approx(0.33831386880321787).epsilon(1e-12));
  CHECK(lobachevsky(kPi / 3) ==
        doctest::Approx(oracle::lobachevsky_quad(kPi / 3)).epsilon(1e-11));
  CHECK(lobachevsky(kPi / 6) == doctest::Approx(0.50747080320482681).epsilon(1e-12));
}

TEST_CASE("lobachevsky is odd and pi-periodic, matching raw quadrature") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> d(-8.0, 8.0);
  for (int it = 0; it < 1000; ++it) {
    const double x = d(rng);
    CHECK(std::fabs(lobachevsky(x + kPi) - lobachevsky(x)) < 1e-10);
    CHECK(std::fabs(lobachevsky(-x) + lobachevsky(x)) < 1e-10);
  }
  // quadrature cross-check on a coarser sample (the oracle is slow)
  for (int it = 0; it < 60; ++it) {
    const double x = d(rng);
    CHECK(lobachevsky(x) == doctest::Approx(oracle::lobachevsky_quad(x)).epsilon(1e-9));
  }
}

TEST_CASE("f_energy values and shift identity") {
  const double f000 = f_energy(0, 0, 0);
  CHECK(f000 == doctest::Approx(3.0 * lobachevsky(kPi / 3)).epsilon(1e-14));
  CHECK(f000 == doctest::Approx(1.0149416064096536).epsilon(1e-12));
  CHECK(f_energy(1, 1, 1) == doctest::Approx(f000 + kPi).epsilon(1e-12));

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dl(0.2, 3.0), dt(-2.0, 2.0);
  int done = 0;
  while (done < 200) {
    const double a = dl(rng), b = dl(rng), c = dl(rng);
    if (!triangle_valid(a, b, c)) continue;
    const double x = std::log(a), y = std::log(b), z = std::log(c);
    const double t = dt(rng);
    CHECK(std::fabs(f_energy(x + t, y + t, z + t) - f_energy(x, y, z) - kPi * t) < 1e-10);
    ++done;
  }

  CHECK_THROWS_AS(f_energy(0, 0, 2.0), Error); // (1, 1, e^2) is no triangle
}

TEST_CASE("f_energy partial derivatives are the angles") {
  const double h = 1e-6;
  const auto check_grad = [&](double x, double y, double z) {
    const double a = std::exp(x), b = std::exp(y), c = std::exp(z);
    const auto ang = triangle_angles({a, b, c});
    const double fx =
        oracle::central_diff([&](double t) { return f_energy(t, y, z); }, x, h);
    const double fy =
        oracle::central_diff([&](double t) { return f_energy(x, t, z); }, y, h);
    const double fz =
        oracle::central_diff([&](double t) { return f_energy(x, y, t); }, z, h);
    CHECK(fx == doctest::Approx(ang.alpha).epsilon(1e-5));
    CHECK(fy == doctest::Approx(ang.beta).epsilon(1e-5));
    CHECK(fz == doctest::Approx(ang.gamma).epsilon(1e-5));
  };
  check_grad(std::log(3.0), std::log(4.0), std::log(5.0));
  check_grad(0, 0, 0);
  check_grad(0.3, -0.2, 0.1);
}

TEST_CASE("circumradius and area reference values") {
  CHECK(circumradius({1, 1, 1}) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(circumradius({3, 4, 5}) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(circumradius({2, 2, 2}) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));

  CHECK(triangle_area({1, 1, 1}) == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-14));
  CHECK(triangle_area({3, 4, 5}) == doctest::Approx(6.0).epsilon(1e-14));
  // base triangle of the family pair (2.0, 2.15): acute since c0^2 <= 1 + b0^2
  CHECK(triangle_area({1, 2.0, 2.15}) > 0);
  CHECK(2.15 * 2.15 <= 1 + 2.0 * 2.0);
}

TEST_CASE("corner_area reference values and sign") {
  CHECK(corner_area(1, kPi / 3) == doctest::Approx(1.0 / (8 * std::sqrt(3.0))).epsilon(1e-14));
  CHECK(std::fabs(corner_area(1, kPi / 2)) < 1e-16);
  CHECK(corner_area(2, kPi / 3) == doctest::Approx(1.0 / (2 * std::sqrt(3.0))).epsilon(1e-14));
  CHECK(corner_area(1, 2 * kPi / 3) < 0);
}

TEST_CASE("corner areas reassemble the triangle") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> d(0.2, 5.0);
  int done = 0;
  while (done < 300) {
    const double a = d(rng), b = d(rng), c = d(rng);
    if (!triangle_valid(a, b, c)) continue;
    const auto ang = triangle_angles({a, b, c});
    if (std::min({ang.alpha, ang.beta, ang.gamma}) < 1e-2) continue;
    // edge regions ell^2 cot / 4, each the sum of two corner_area halves
    const double pieces = a * a * cot_opposite(a, b, c) / 4.0 +
                          b * b * cot_opposite(b, c, a) / 4.0 +
                          c * c * cot_opposite(c, a, b) / 4.0;
    const double area = triangle_area({a, b, c});
    CHECK(std::fabs(pieces - area) <= 1e-12 * area);
    // corner_area halves agree with the rational pieces up to the angle round-trip
    CHECK(std::fabs(2 * corner_area(a, ang.alpha) - a * a * cot_opposite(a, b, c) / 4.0) <
          1e-9 * (1 + a * a));
    ++done;
  }
}
