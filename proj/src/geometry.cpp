#include "plf/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace plf {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void throw_invalid(double a, double b, double c) {
  throw Error(ErrorKind::InvalidMetric,
              "triangle inequality violated for lengths (" + std::to_string(a) +
                  ", " + std::to_string(b) + ", " + std::to_string(c) + ")");
}

// Kahan's stable Heron: operands ordered so the differences are benign.
double stable_heron(double a, double b, double c) {
  if (a < b) std::swap(a, b);
  if (a < c) std::swap(a, c);
  if (b < c) std::swap(b, c);
  // now a >= b >= c
  const double t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  if (!(t > 0)) throw_invalid(a, b, c);
  return 0.25 * std::sqrt(t);
}

} // namespace

bool triangle_valid(double a, double b, double c) {
  return a > 0 && b > 0 && c > 0 && a + b > c && b + c > a && c + a > b;
}

bool TriangleLengths::valid() const { return triangle_valid(a, b, c); }

double angle_opposite(double a, double b, double c) {
  const double ta = -a + b + c;
  const double tb = a - b + c;
  const double tc = a + b - c;
  const double p = a + b + c;
  if (!(ta > 0) || !(tb > 0) || !(tc > 0)) throw_invalid(a, b, c);
  // tan(alpha/2) = sqrt(tb*tc / (p*ta))
  return 2.0 * std::atan2(std::sqrt(tb * tc), std::sqrt(p * ta));
}

double cot_opposite(double a, double b, double c) {
  return (b * b + c * c - a * a) / (4.0 * stable_heron(a, b, c));
}

TriangleAngles triangle_angles(const TriangleLengths& t) {
  TriangleAngles r;
  r.alpha = angle_opposite(t.a, t.b, t.c);
  r.beta = angle_opposite(t.b, t.c, t.a);
  r.gamma = angle_opposite(t.c, t.a, t.b);
  return r;
}

double triangle_area(double a, double b, double c) { return stable_heron(a, b, c); }

double triangle_area(const TriangleLengths& t) { return stable_heron(t.a, t.b, t.c); }

double circumradius(double a, double b, double c) {
  return a * b * c / (4.0 * stable_heron(a, b, c));
}

double circumradius(const TriangleLengths& t) { return circumradius(t.a, t.b, t.c); }

double corner_area(double ell, double alpha_opposite) {
  return ell * ell * (std::cos(alpha_opposite) / std::sin(alpha_opposite)) / 8.0;
}

namespace {

// Coefficients zeta(2k) / (k (2k+1)) of the expansion
//   int_0^x log(sin t / t) dt = -x * sum_{k>=1} zc[k-1] (x/pi)^{2k},
// convergent for |x| < pi; used on [0, pi/2] where the tail is < 1e-20.
constexpr double kZetaCoeff[] = {
    0.54831135561607547882,   0.10823232337111381915,   0.048444907713545197129,
    0.027891037672165120538,  0.018199901365960328824,  0.012823667776324462158,
    0.0095243928393815114746, 0.0073530535460250636167, 0.0058479755397266959055,
    0.00476190930458111368,   0.0039525701124525799515, 0.0033333335320272968375,
    0.0028490028914574211634, 0.002463054196367817795,  0.0021505376364114568439,
    0.0018939393943803620897, 0.0016806722690053911275, 0.0015015015015233512341,
    0.0013495276653220485554, 0.0012195121951230603595, 0.0011074197120711266597,
    0.0010101010101010675186, 0.00092506938020352840967, 0.00085034013605442478972,
    0.00078431372549019677504, 0.00072568940493468811469, 0.00067340067340067343805,
    0.00062656641604010025932, 0.00058445353594389246258, 0.00054644808743169398955,
    0.00051203277009728622643, 0.00048076923076923076926};

// L on [0, pi/2]: the log singularity at 0 split off analytically,
// the smooth remainder summed as a series.
double lob_core(double x) {
  if (x <= 0) return 0.0;
  const double r2 = (x / kPi) * (x / kPi);
  double s = 0.0;
  double p = r2;
  for (double ck : kZetaCoeff) {
    const double term = ck * p;
    s += term;
    if (term < 1e-19) break;
    p *= r2;
  }
  return x * (1.0 - std::log(2.0 * x) + s);
}

} // namespace

double lobachevsky(double x) {
  // pi-periodic reduction to [-pi/2, pi/2], then oddness.
  const double y = std::remainder(x, kPi);
  const double v = lob_core(std::fabs(y));
  return y < 0 ? -v : v;
}

double f_energy(double x, double y, double z) {
  const double a = std::exp(x), b = std::exp(y), c = std::exp(z);
  const double alpha = angle_opposite(a, b, c);
  const double beta = angle_opposite(b, c, a);
  const double gamma = angle_opposite(c, a, b);
  return alpha * x + beta * y + gamma * z + lobachevsky(alpha) +
         lobachevsky(beta) + lobachevsky(gamma);
}

} // namespace plf
