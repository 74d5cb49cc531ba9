#pragma once

#include "plf/error.hpp"

namespace plf {

// Euclidean edge lengths of a triangle. Valid iff the sharp triangle
// inequalities hold.
struct TriangleLengths {
  double a = 0, b = 0, c = 0;
  bool valid() const;
};

// Interior angles in radians; alpha is opposite a, beta opposite b,
// gamma opposite c. Sum is pi.
struct TriangleAngles {
  double alpha = 0, beta = 0, gamma = 0;
};

bool triangle_valid(double a, double b, double c);

// Angle opposite the side of length a in the triangle (a, b, c).
// Half-angle atan2 formulation, stable near degenerate triangles.
double angle_opposite(double a, double b, double c);

// Cotangent of the angle opposite a, computed as (b^2+c^2-a^2)/(4 Area).
double cot_opposite(double a, double b, double c);

TriangleAngles triangle_angles(const TriangleLengths& t);

// Heron area with Kahan's stable ordering of factors.
double triangle_area(const TriangleLengths& t);
double triangle_area(double a, double b, double c);

// Circumcircle radius, a*b*c / (4 Area).
double circumradius(const TriangleLengths& t);
double circumradius(double a, double b, double c);

// Signed half edge-region of the circumcentric decomposition:
// ell^2 cot(alpha_opposite) / 8. Negative when the opposite angle is obtuse.
double corner_area(double ell, double alpha_opposite);

// Milnor's Lobachevsky function L(x) = -int_0^x log|2 sin t| dt.
// Odd and pi-periodic; accurate to ~1e-14 on [0, pi].
double lobachevsky(double x);

// f(x,y,z) = alpha x + beta y + gamma z + L(alpha) + L(beta) + L(gamma)
// for the triangle with edge lengths (e^x, e^y, e^z); alpha opposite e^x.
// Throws when the exponentiated lengths violate the triangle inequalities.
double f_energy(double x, double y, double z);

} // namespace plf
