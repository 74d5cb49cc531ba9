#pragma once

#include "plf/conformal.hpp"

#include <string>
#include <vector>

namespace plf {

// Parameters of the one-parameter counterexample families. Base lengths are
// a = abar = 1, b = bbar = b0, c = cbar = c0 with b0, c0 >= 1 and
// c0^2 <= 1 + b0^2 (the triangle (1, b0, c0) is acute, so the base metric is
// Delaunay). v parametrizes the conformal change inside
// S = [-log(b0^2+c0^2), log(b0^2+c0^2)].
struct FamilyConfig {
  double b0 = 1;
  double c0 = 1;
  double v = 0;
};

struct FamilyMember {
  MarkedSurface surface;
  DiscreteMetric metric;                // already scaled to parameter v
  std::vector<std::string> edge_labels; // by edge id
};

// Half-width of the admissible parameter interval S.
double family_interval(double b0, double c0);

void validate_family_config(const FamilyConfig& cfg);

// Sphere with four marked points: edge a joins vertices 1,2; abar joins 3,4;
// b, bbar join {1,3}, {2,4}; c, cbar join {2,3}, {1,4}. The conformal change
// is u(v) = (0, 0, v, v), giving lengths a = 1, abar = e^v,
// b = bbar = b0 e^{v/2}, c = cbar = c0 e^{v/2}.
FamilyMember tetrahedron_family(const FamilyConfig& cfg);

// Genus-2 surface with two marked points: eight triangles of type (a, b, c),
// a-edges are loops (a1, a2 at vertex 1; a3, a4 at vertex 2), b- and c-edges
// join the two vertices. The conformal change is u(v) = (0, v). The gluing is
// a frozen constant verified by the construction tests (connected, closed,
// oriented, chi = -2, and K_1 = K_2 = -pi/(2A) at v = 0).
FamilyMember genus2_family(const FamilyConfig& cfg);

// Curvature mismatch D(v) = W_1 A_3 - W_3 A_1 of the tetrahedron family;
// zero iff the member has constant discrete Gaussian curvature.
double eval_g(const FamilyConfig& cfg);

// The two-vertex analogue W_1 A_2 - W_2 A_1 for the genus-2 family.
double eval_h(const FamilyConfig& cfg);

} // namespace plf
