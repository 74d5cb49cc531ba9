#include "plf/conformal.hpp"

#include "plf/geometry.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace plf {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::array<double, 3> side_lengths(const MarkedSurface& s, const DiscreteMetric& m, int h) {
  // lengths of sides (h, next h, prev h) within face(h)
  return {m.len[s.edge(h)], m.len[s.edge(s.next(h))], m.len[s.edge(s.prev(h))]};
}

void validate_face(const MarkedSurface& s, const DiscreteMetric& m, int f) {
  const auto L = side_lengths(s, m, s.halfedge_of_face(f));
  if (!triangle_valid(L[0], L[1], L[2]))
    throw Error(ErrorKind::InvalidMetric,
                "face " + std::to_string(f) + " violates the sharp triangle inequalities (" +
                    std::to_string(L[0]) + ", " + std::to_string(L[1]) + ", " +
                    std::to_string(L[2]) + ")",
                -1, f);
}

int first_invalid_face(const MarkedSurface& s, const DiscreteMetric& m) {
  for (int f = 0; f < s.face_count(); ++f) {
    const auto L = side_lengths(s, m, s.halfedge_of_face(f));
    if (!triangle_valid(L[0], L[1], L[2])) return f;
  }
  return -1;
}

// cot of the angle opposite side h within face(h)
double cot_opposite_side(const MarkedSurface& s, const DiscreteMetric& m, int h) {
  const auto L = side_lengths(s, m, h);
  return cot_opposite(L[0], L[1], L[2]);
}

// angle at the corner origin(h) within face(h); opposite side is next(h)
double corner_angle(const MarkedSurface& s, const DiscreteMetric& m, int h) {
  const auto L = side_lengths(s, m, h);
  return angle_opposite(L[1], L[2], L[0]);
}

// 2 cos(angle opposite side h) as a rational expression in the lengths;
// defined for arbitrary positive lengths, cosine only when the face is valid.
double cos2_opposite_side(const MarkedSurface& s, const DiscreteMetric& m, int h) {
  const auto L = side_lengths(s, m, h);
  return (L[1] * L[1] + L[2] * L[2] - L[0] * L[0]) / (L[1] * L[2]);
}

// Diagonal of the quadrilateral obtained by unfolding the two faces of e
// into the plane. Exact (metric-preserving) length for a Euclidean flip.
double unfolded_diagonal(const MarkedSurface& s, const DiscreteMetric& m, int e) {
  const int h = s.halfedge_of_edge(e);
  const int t = s.twin(h);
  const double c = m.len[e];
  const double l_jk = m.len[s.edge(s.next(h))];
  const double l_ki = m.len[s.edge(s.prev(h))];
  const double l_il = m.len[s.edge(s.next(t))];
  const double l_lj = m.len[s.edge(s.prev(t))];
  const double kx = (c * c + l_ki * l_ki - l_jk * l_jk) / (2.0 * c);
  const double ky = 2.0 * triangle_area(c, l_jk, l_ki) / c;
  const double lx = (c * c + l_il * l_il - l_lj * l_lj) / (2.0 * c);
  const double ly = -2.0 * triangle_area(c, l_il, l_lj) / c;
  return std::hypot(kx - lx, ky - ly);
}

double ptolemy_diagonal(const MarkedSurface& s, const DiscreteMetric& m, int e) {
  const int h = s.halfedge_of_edge(e);
  const int t = s.twin(h);
  const double l_jk = m.len[s.edge(s.next(h))];
  const double l_ki = m.len[s.edge(s.prev(h))];
  const double l_il = m.len[s.edge(s.next(t))];
  const double l_lj = m.len[s.edge(s.prev(t))];
  return (l_ki * l_lj + l_il * l_jk) / m.len[e];
}

// Shared flip scheduling: a queue of suspect edges, re-enqueueing the four
// quad boundary edges after each flip. `violates` decides, `new_length`
// supplies the diagonal update.
template <typename Violates, typename NewLength>
int flip_to_delaunay(MarkedSurface& s, DiscreteMetric& m, long max_flips,
                     Violates violates, NewLength new_length) {
  std::deque<int> queue;
  std::vector<char> queued(s.edge_count(), 1);
  for (int e = 0; e < s.edge_count(); ++e) queue.push_back(e);

  int flips = 0;
  auto enqueue = [&](int e) {
    if (!queued[e]) {
      queued[e] = 1;
      queue.push_back(e);
    }
  };

  while (!queue.empty()) {
    const int e = queue.front();
    queue.pop_front();
    queued[e] = 0;
    if (!violates(s, m, e)) continue;
    if (flips >= max_flips)
      throw Error(ErrorKind::FlipLimit,
                  "flip limit " + std::to_string(max_flips) +
                      " exceeded; numerically degenerate input");
    const double d = new_length(s, m, e);
    s.flip_edge_in_place(e);
    m.len[e] = d;
    ++flips;
    const int h = s.halfedge_of_edge(e);
    const int t = s.twin(h);
    enqueue(s.edge(s.next(h)));
    enqueue(s.edge(s.prev(h)));
    enqueue(s.edge(s.next(t)));
    enqueue(s.edge(s.prev(t)));
  }
  return flips;
}

long flip_guard(const MarkedSurface& s, double u_scale_hint) {
  return static_cast<long>(50.0 * s.edge_count() * (1.0 + std::fabs(u_scale_hint))) + 50;
}

} // namespace

double DiscreteMetric::lambda(int e) const { return 2.0 * std::log(len[e]); }

void validate_metric(const MarkedSurface& s, const DiscreteMetric& m) {
  if (static_cast<int>(m.len.size()) != s.edge_count())
    throw Error(ErrorKind::InvalidMetric, "metric has " + std::to_string(m.len.size()) +
                                              " lengths for " + std::to_string(s.edge_count()) +
                                              " edges");
  for (int f = 0; f < s.face_count(); ++f) validate_face(s, m, f);
}

ScaledMetric scale_metric(const MarkedSurface& s, const DiscreteMetric& m,
                          const ConformalFactor& u) {
  ScaledMetric out;
  out.metric.len.resize(m.len.size());
  for (int e = 0; e < s.edge_count(); ++e) {
    const auto ep = s.edge_endpoints(e);
    out.metric.len[e] = m.len[e] * std::exp(0.5 * (u[ep[0]] + u[ep[1]]));
  }
  out.first_invalid_face = first_invalid_face(s, out.metric);
  out.valid = out.first_invalid_face < 0;
  return out;
}

double delaunay_cot_sum(const MarkedSurface& s, const DiscreteMetric& m, int e) {
  const int h = s.halfedge_of_edge(e);
  validate_face(s, m, s.face(h));
  validate_face(s, m, s.face(s.twin(h)));
  return cot_opposite_side(s, m, h) + cot_opposite_side(s, m, s.twin(h));
}

bool is_delaunay_edge(const MarkedSurface& s, const DiscreteMetric& m, int e) {
  return delaunay_cot_sum(s, m, e) >= -kDelaunayEps;
}

DelaunayResult make_delaunay(const MarkedSurface& s, const DiscreteMetric& m,
                             double u_scale_hint) {
  validate_metric(s, m);
  DelaunayResult out{s, m, 0};
  out.flips = flip_to_delaunay(
      out.surface, out.metric, flip_guard(s, u_scale_hint),
      [](const MarkedSurface& ws, const DiscreteMetric& wm, int e) {
        return delaunay_cot_sum(ws, wm, e) < -kDelaunayEps;
      },
      [](const MarkedSurface& ws, const DiscreteMetric& wm, int e) {
        const int h = ws.halfedge_of_edge(e);
        if (ws.face(h) == ws.face(ws.twin(h)))
          throw Error(ErrorKind::Degenerate,
                      "non-Delaunay edge " + std::to_string(e) +
                          " has the same face on both sides; cannot flip");
        return unfolded_diagonal(ws, wm, e);
      });
  validate_metric(out.surface, out.metric);
  return out;
}

DelaunayResult conformal_delaunay(const MarkedSurface& s, const DiscreteMetric& base,
                                  const ConformalFactor& u) {
  DelaunayResult out = make_delaunay(s, base, 0.0);
  const int euclid_flips = out.flips;

  for (int e = 0; e < out.surface.edge_count(); ++e) {
    const auto ep = out.surface.edge_endpoints(e);
    out.metric.len[e] *= std::exp(0.5 * (u[ep[0]] + u[ep[1]]));
  }

  const double u_max = u.size() ? u.cwiseAbs().maxCoeff() : 0.0;
  const int ptolemy_flips = flip_to_delaunay(
      out.surface, out.metric, flip_guard(s, u_max),
      [](const MarkedSurface& ws, const DiscreteMetric& wm, int e) {
        const int h = ws.halfedge_of_edge(e);
        const double q = cos2_opposite_side(ws, wm, h) +
                         cos2_opposite_side(ws, wm, ws.twin(h));
        return q < -kDelaunayEps;
      },
      [](const MarkedSurface& ws, const DiscreteMetric& wm, int e) {
        const int h = ws.halfedge_of_edge(e);
        if (ws.face(h) == ws.face(ws.twin(h)))
          throw Error(ErrorKind::Degenerate,
                      "non-Delaunay edge " + std::to_string(e) +
                          " has the same face on both sides; cannot flip");
        return ptolemy_diagonal(ws, wm, e);
      });

  const int bad = first_invalid_face(out.surface, out.metric);
  if (bad >= 0)
    throw Error(ErrorKind::Degenerate,
                "scaled metric degenerates on face " + std::to_string(bad), -1, bad);
  out.flips = euclid_flips + ptolemy_flips;
  return out;
}

Eigen::VectorXd angle_defects(const MarkedSurface& s, const DiscreteMetric& m) {
  validate_metric(s, m);
  Eigen::VectorXd W = Eigen::VectorXd::Constant(s.vertex_count(), 2.0 * kPi);
  for (int h = 0; h < s.halfedge_count(); ++h) W[s.origin(h)] -= corner_angle(s, m, h);
  return W;
}

Eigen::VectorXd voronoi_areas(const MarkedSurface& s, const DiscreteMetric& m) {
  validate_metric(s, m);
  // Contract: corner areas equal Voronoi cell areas on Delaunay inputs only.
  // The tolerance here is looser than the flip threshold so that states
  // produced by the flip loops always pass.
  for (int e = 0; e < s.edge_count(); ++e)
    if (delaunay_cot_sum(s, m, e) < -1e-9)
      throw Error(ErrorKind::NotDelaunay,
                  "voronoi_areas called on a non-Delaunay edge " + std::to_string(e));

  Eigen::VectorXd A = Eigen::VectorXd::Zero(s.vertex_count());
  for (int f = 0; f < s.face_count(); ++f) {
    int h = s.halfedge_of_face(f);
    for (int k = 0; k < 3; ++k, h = s.next(h)) {
      // half of side h's circumcentric edge region, ell^2 cot(alpha_opp) / 8,
      // with the cot taken in rational form to avoid the angle round-trip
      const double ell = m.len[s.edge(h)];
      const double piece = ell * ell * cot_opposite_side(s, m, h) / 8.0;
      A[s.origin(h)] += piece;
      A[s.head(h)] += piece;
    }
  }
  for (int v = 0; v < s.vertex_count(); ++v)
    if (!(A[v] > 0))
      throw Error(ErrorKind::Degenerate,
                  "Voronoi cell area of vertex " + std::to_string(v) + " is not positive");
  return A;
}

CurvatureReport curvature_report(const MarkedSurface& s, const DiscreteMetric& m) {
  DelaunayResult d = make_delaunay(s, m, 0.0);
  CurvatureReport r;
  r.W = angle_defects(d.surface, d.metric);
  r.A = voronoi_areas(d.surface, d.metric);
  r.K = r.W.cwiseQuotient(r.A);
  r.A_tot = 0;
  for (int f = 0; f < d.surface.face_count(); ++f) {
    const auto L = side_lengths(d.surface, d.metric, d.surface.halfedge_of_face(f));
    r.A_tot += triangle_area(L[0], L[1], L[2]);
  }
  r.chi = s.euler_characteristic();
  r.flips = d.flips;
  return r;
}

bool in_penner_cell(const MarkedSurface& s, const DiscreteMetric& base,
                    const ConformalFactor& u) {
  validate_metric(s, base);
  const ScaledMetric sm = scale_metric(s, base, u);
  if (!sm.valid) return false;
  for (int e = 0; e < s.edge_count(); ++e)
    if (delaunay_cot_sum(s, sm.metric, e) < -kDelaunayEps) return false;
  return true;
}

} // namespace plf
