#pragma once

#include "plf/surface.hpp"

#include <Eigen/Core>

#include <vector>

namespace plf {

// Positive edge lengths indexed by edge id. Valid when the sharp triangle
// inequalities hold on every face (checked by ops that require it).
struct DiscreteMetric {
  std::vector<double> len;

  double lambda(int e) const; // logarithmic length, 2 log len[e]
};

// Per-vertex log scale factors parametrizing the conformal class.
using ConformalFactor = Eigen::VectorXd;

struct CurvatureReport {
  Eigen::VectorXd W; // angle defects, radians
  Eigen::VectorXd A; // Voronoi cell areas
  Eigen::VectorXd K; // W_i / A_i
  double A_tot = 0;
  int chi = 0;
  int flips = 0; // flips performed by the internal make_delaunay
};

struct ScaledMetric {
  DiscreteMetric metric;
  bool valid = true;           // all faces still satisfy sharp triangle inequalities
  int first_invalid_face = -1; // -1 when valid
};

struct DelaunayResult {
  MarkedSurface surface;
  DiscreteMetric metric;
  int flips = 0;
};

// Tolerance on the cot-sum for the Delaunay test; flips fire only beyond it,
// which prevents flip cycling at Penner cell boundaries.
inline constexpr double kDelaunayEps = 1e-12;

// Throws InvalidMetric naming the first offending face.
void validate_metric(const MarkedSurface& s, const DiscreteMetric& m);

// l~_ij = l_ij exp((u_i+u_j)/2). Never throws; validity is reported.
ScaledMetric scale_metric(const MarkedSurface& s, const DiscreteMetric& m,
                          const ConformalFactor& u);

// cot a_k + cot a_l across the two faces adjacent to e.
double delaunay_cot_sum(const MarkedSurface& s, const DiscreteMetric& m, int e);
bool is_delaunay_edge(const MarkedSurface& s, const DiscreteMetric& m, int e);

// Flip to an intrinsic Delaunay triangulation of the same PL-metric. The
// flipped diagonal takes the length of the unfolded quadrilateral's diagonal,
// so total area, cone angles and Voronoi cells are preserved exactly.
// u_scale_hint widens the termination guard (50 |E| (1+hint) flips).
DelaunayResult make_delaunay(const MarkedSurface& s, const DiscreteMetric& m,
                             double u_scale_hint = 0.0);

// Delaunay triangulation of d(u), the conformally changed metric. Lengths are
// scaled on a Delaunay triangulation of the base and transported by Ptolemy
// flips, so the result is consistent across Penner cells even when the scaled
// lengths break the triangle inequalities on the way.
DelaunayResult conformal_delaunay(const MarkedSurface& s, const DiscreteMetric& base,
                                  const ConformalFactor& u);

// W_i = 2 pi - sum of corner angles at i (loop edges contribute both corners).
Eigen::VectorXd angle_defects(const MarkedSurface& s, const DiscreteMetric& m);

// Circumcentric corner areas, valid (equal to Voronoi cell areas) on Delaunay
// triangulations only; throws NotDelaunay otherwise.
Eigen::VectorXd voronoi_areas(const MarkedSurface& s, const DiscreteMetric& m);

// Runs make_delaunay internally, then assembles W, A, K, A_tot, chi.
CurvatureReport curvature_report(const MarkedSurface& s, const DiscreteMetric& m);

// True iff scale_metric(base, u) keeps every face valid and every edge
// Delaunay without flips (u lies in the Penner cell of this triangulation).
bool in_penner_cell(const MarkedSurface& s, const DiscreteMetric& base,
                    const ConformalFactor& u);

} // namespace plf
