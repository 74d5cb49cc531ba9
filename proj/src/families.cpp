#include "plf/families.hpp"

#include <cmath>
#include <map>

namespace plf {

namespace {

void assign_by_endpoints(const MarkedSurface& s, DiscreteMetric& m,
                         std::vector<std::string>& labels,
                         const std::map<std::pair<int, int>, std::pair<std::string, double>>& table) {
  m.len.resize(s.edge_count());
  labels.resize(s.edge_count());
  for (int e = 0; e < s.edge_count(); ++e) {
    const auto ep = s.edge_endpoints(e);
    const auto key = std::minmax(ep[0], ep[1]);
    const auto it = table.find({key.first, key.second});
    if (it == table.end())
      throw Error(ErrorKind::InvalidConfig, "family edge table misses an edge");
    labels[e] = it->second.first;
    m.len[e] = it->second.second;
  }
}

} // namespace

double family_interval(double b0, double c0) { return std::log(b0 * b0 + c0 * c0); }

void validate_family_config(const FamilyConfig& cfg) {
  if (!(cfg.b0 >= 1.0) || !(cfg.c0 >= 1.0))
    throw Error(ErrorKind::InvalidConfig, "family parameters need b0 >= 1 and c0 >= 1");
  if (cfg.c0 * cfg.c0 > 1.0 + cfg.b0 * cfg.b0)
    throw Error(ErrorKind::InvalidConfig,
                "family parameters violate c0^2 <= 1 + b0^2: the base triangle (1, b0, c0) "
                "must be acute");
  const double L = family_interval(cfg.b0, cfg.c0);
  if (std::fabs(cfg.v) > L * (1.0 + 1e-12) + 1e-12)
    throw Error(ErrorKind::InvalidConfig,
                "v = " + std::to_string(cfg.v) + " lies outside S = [-" + std::to_string(L) +
                    ", " + std::to_string(L) + "]");
}

FamilyMember tetrahedron_family(const FamilyConfig& cfg) {
  validate_family_config(cfg);
  // vertices 1..4 as 0..3; oriented tetrahedron (123)(134)(142)(243)
  const std::vector<FaceSpec> faces = {
      FaceSpec{{0, 1, 2}},
      FaceSpec{{0, 2, 3}},
      FaceSpec{{0, 3, 1}},
      FaceSpec{{1, 3, 2}},
  };
  FamilyMember fm{build_surface(4, faces), {}, {}};

  const double eh = std::exp(0.5 * cfg.v); // scale on edges with one moved endpoint
  const double ef = std::exp(cfg.v);       // scale on edges with both endpoints moved
  const std::map<std::pair<int, int>, std::pair<std::string, double>> table = {
      {{0, 1}, {"a", 1.0}},
      {{2, 3}, {"abar", ef}},
      {{0, 2}, {"b", cfg.b0 * eh}},
      {{1, 3}, {"bbar", cfg.b0 * eh}},
      {{1, 2}, {"c", cfg.c0 * eh}},
      {{0, 3}, {"cbar", cfg.c0 * eh}},
  };
  assign_by_endpoints(fm.surface, fm.metric, fm.edge_labels, table);
  return fm;
}

FamilyMember genus2_family(const FamilyConfig& cfg) {
  validate_family_config(cfg);
  // Frozen gluing of eight triangles forming a closed oriented genus-2
  // surface on two vertices. Edge keys: 0,1 loops a1,a2 at vertex 0;
  // 2,3 loops a3,a4 at vertex 1; 4..7 = b1..b4; 8..11 = c1..c4.
  const std::vector<FaceSpec> faces = {
      FaceSpec{{0, 0, 1}, {0, 8, 4}},  // a1 c1 b1
      FaceSpec{{0, 1, 1}, {5, 3, 8}},  // b2 a4 c1
      FaceSpec{{0, 0, 1}, {1, 9, 5}},  // a2 c2 b2
      FaceSpec{{0, 1, 1}, {6, 2, 9}},  // b3 a3 c2
      FaceSpec{{0, 0, 1}, {0, 10, 6}}, // a1 c3 b3
      FaceSpec{{0, 1, 1}, {7, 3, 10}}, // b4 a4 c3
      FaceSpec{{0, 0, 1}, {1, 11, 7}}, // a2 c4 b4
      FaceSpec{{0, 1, 1}, {4, 2, 11}}, // b1 a3 c4
  };
  FamilyMember fm{build_surface(2, faces), {}, {}};

  static const char* kLabels[12] = {"a1", "a2", "a3", "a4", "b1", "b2",
                                    "b3", "b4", "c1", "c2", "c3", "c4"};
  const double eh = std::exp(0.5 * cfg.v);
  const double ef = std::exp(cfg.v);
  fm.metric.len.resize(fm.surface.edge_count());
  fm.edge_labels.resize(fm.surface.edge_count());

  // Map internal edge ids back to the frozen keys through the face table.
  std::vector<int> key_of_edge(fm.surface.edge_count(), -1);
  for (int f = 0; f < fm.surface.face_count(); ++f) {
    const auto ids = fm.surface.face_edges(f);
    for (int k = 0; k < 3; ++k) key_of_edge[ids[k]] = faces[f].e[k];
  }
  for (int e = 0; e < fm.surface.edge_count(); ++e) {
    const int key = key_of_edge[e];
    fm.edge_labels[e] = kLabels[key];
    if (key < 2)
      fm.metric.len[e] = 1.0; // loops at vertex 0, u = 0
    else if (key < 4)
      fm.metric.len[e] = ef; // loops at vertex 1, u = v
    else if (key < 8)
      fm.metric.len[e] = cfg.b0 * eh;
    else
      fm.metric.len[e] = cfg.c0 * eh;
  }
  return fm;
}

double eval_g(const FamilyConfig& cfg) {
  const FamilyMember fm = tetrahedron_family(cfg);
  const CurvatureReport r = curvature_report(fm.surface, fm.metric);
  return r.W[0] * r.A[2] - r.W[2] * r.A[0];
}

double eval_h(const FamilyConfig& cfg) {
  const FamilyMember fm = genus2_family(cfg);
  const CurvatureReport r = curvature_report(fm.surface, fm.metric);
  return r.W[0] * r.A[1] - r.W[1] * r.A[0];
}

} // namespace plf
