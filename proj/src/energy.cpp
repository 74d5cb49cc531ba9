#include "plf/energy.hpp"

#include "plf/geometry.hpp"

#include <cmath>
#include <vector>

namespace plf {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct FaceTables {
  // per half-edge: cot of the angle opposite that side
  std::vector<double> cot_opp;
  // per face: area and squared circumradius
  std::vector<double> area;
  std::vector<double> circum2;
};

FaceTables face_tables(const MarkedSurface& s, const DiscreteMetric& m) {
  FaceTables t;
  t.cot_opp.resize(s.halfedge_count());
  t.area.resize(s.face_count());
  t.circum2.resize(s.face_count());
  for (int f = 0; f < s.face_count(); ++f) {
    const int h0 = s.halfedge_of_face(f);
    const int h1 = s.next(h0), h2 = s.next(h1);
    const double a = m.len[s.edge(h0)];
    const double b = m.len[s.edge(h1)];
    const double c = m.len[s.edge(h2)];
    const double area = triangle_area(a, b, c);
    t.area[f] = area;
    const double r = a * b * c / (4.0 * area);
    t.circum2[f] = r * r;
    t.cot_opp[h0] = (b * b + c * c - a * a) / (4.0 * area);
    t.cot_opp[h1] = (c * c + a * a - b * b) / (4.0 * area);
    t.cot_opp[h2] = (a * a + b * b - c * c) / (4.0 * area);
  }
  return t;
}

Eigen::SparseMatrix<double> from_triplets(int n,
                                          const std::vector<Eigen::Triplet<double>>& trip) {
  Eigen::SparseMatrix<double> H(n, n);
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

// E restricted to the Delaunay state d, with the 2 pi sum u_i term added by
// the caller (it needs the original u, not the transported lengths).
EnergyEval e_eval(const DelaunayResult& d, const FaceTables& t, bool with_hessian) {
  const MarkedSurface& ds = d.surface;
  EnergyEval out;
  out.value = 0;
  for (int f = 0; f < ds.face_count(); ++f) {
    const auto fe = ds.face_edges(f);
    const double x = std::log(d.metric.len[fe[0]]);
    const double y = std::log(d.metric.len[fe[1]]);
    const double z = std::log(d.metric.len[fe[2]]);
    out.value += 2.0 * f_energy(x, y, z) - kPi * (x + y + z);
  }
  out.gradient = angle_defects(ds, d.metric);

  if (with_hessian) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(4 * ds.edge_count());
    for (int e = 0; e < ds.edge_count(); ++e) {
      const auto ep = ds.edge_endpoints(e);
      if (ep[0] == ep[1]) continue; // loop edges contribute nothing to (du_i - du_j)^2
      const int h = ds.halfedge_of_edge(e);
      const double w = 0.25 * (t.cot_opp[h] + t.cot_opp[ds.twin(h)]);
      trip.emplace_back(ep[0], ep[0], w);
      trip.emplace_back(ep[1], ep[1], w);
      trip.emplace_back(ep[0], ep[1], -w);
      trip.emplace_back(ep[1], ep[0], -w);
    }
    out.hessian = from_triplets(ds.vertex_count(), trip);
  }
  return out;
}

EnergyEval area_eval(const DelaunayResult& d, const FaceTables& t, bool with_hessian) {
  const MarkedSurface& ds = d.surface;
  EnergyEval out;
  out.value = 0;
  for (int f = 0; f < ds.face_count(); ++f) out.value += t.area[f];
  if (out.value < 1e-300) throw Error(ErrorKind::Degenerate, "total area underflow");

  out.gradient = 2.0 * voronoi_areas(ds, d.metric);

  if (with_hessian) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(4 * ds.edge_count());
    for (int e = 0; e < ds.edge_count(); ++e) {
      const auto ep = ds.edge_endpoints(e);
      const int h = ds.halfedge_of_edge(e);
      const int ht = ds.twin(h);
      const double ell = d.metric.len[e];
      const double a_e = ell * ell / 8.0 * (t.cot_opp[h] + t.cot_opp[ht]);
      const double c1 = 2.0 * a_e; // coefficient on (du_i + du_j)^2
      const double c2 = -0.5 * (t.circum2[ds.face(h)] * t.cot_opp[h] +
                                t.circum2[ds.face(ht)] * t.cot_opp[ht]); // on (du_i - du_j)^2
      trip.emplace_back(ep[0], ep[0], c1 + c2);
      trip.emplace_back(ep[1], ep[1], c1 + c2);
      trip.emplace_back(ep[0], ep[1], c1 - c2);
      trip.emplace_back(ep[1], ep[0], c1 - c2);
    }
    out.hessian = from_triplets(ds.vertex_count(), trip);
  }
  return out;
}

} // namespace

EnergyEval energy_E(const MarkedSurface& s, const DiscreteMetric& base,
                    const ConformalFactor& u, bool with_hessian) {
  const DelaunayResult d = conformal_delaunay(s, base, u);
  const FaceTables t = face_tables(d.surface, d.metric);
  EnergyEval out = e_eval(d, t, with_hessian);
  out.value += 2.0 * kPi * u.sum();
  return out;
}

EnergyEval total_area(const MarkedSurface& s, const DiscreteMetric& base,
                      const ConformalFactor& u, bool with_hessian) {
  const DelaunayResult d = conformal_delaunay(s, base, u);
  const FaceTables t = face_tables(d.surface, d.metric);
  return area_eval(d, t, with_hessian);
}

EnergyEval energy_F(const MarkedSurface& s, const DiscreteMetric& base,
                    const ConformalFactor& u, bool with_hessian) {
  const DelaunayResult d = conformal_delaunay(s, base, u);
  const FaceTables t = face_tables(d.surface, d.metric);

  EnergyEval e = e_eval(d, t, with_hessian);
  e.value += 2.0 * kPi * u.sum();
  const EnergyEval a = area_eval(d, t, with_hessian);
  const double chi = d.surface.euler_characteristic();

  EnergyEval out;
  out.value = e.value - kPi * chi * std::log(a.value);
  out.gradient = e.gradient - (kPi * chi / a.value) * a.gradient;

  if (with_hessian) {
    Eigen::SparseMatrix<double> H = *e.hessian;
    H -= (kPi * chi / a.value) * (*a.hessian);
    // dense rank-1 correction + (pi chi / A^2) (grad A)(grad A)^T
    const Eigen::MatrixXd rank1 =
        (kPi * chi / (a.value * a.value)) * a.gradient * a.gradient.transpose();
    out.hessian = H + Eigen::SparseMatrix<double>(rank1.sparseView(1.0, 0.0));
  }
  return out;
}

} // namespace plf
