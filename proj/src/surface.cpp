#include "plf/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace plf {

namespace {

std::string side_name(const FaceSpec& f, int s) {
  return "(" + std::to_string(f.v[s]) + "," + std::to_string(f.v[(s + 1) % 3]) + ")";
}

} // namespace

MarkedSurface MarkedSurface::build(int vertex_count, const std::vector<FaceSpec>& faces) {
  if (vertex_count < 1)
    throw Error(ErrorKind::InvalidSurface, "surface needs at least one vertex");
  if (faces.empty())
    throw Error(ErrorKind::InvalidSurface, "surface needs at least one face");

  MarkedSurface s;
  s.vertex_count_ = vertex_count;
  const int nf = static_cast<int>(faces.size());
  const int nh = 3 * nf;
  s.next_.resize(nh);
  s.twin_.assign(nh, -1);
  s.origin_.resize(nh);
  s.face_.resize(nh);
  s.edge_.assign(nh, -1);
  s.face_half_.resize(nf);

  for (int f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) {
      const int vk = faces[f].v[k];
      if (vk < 0 || vk >= vertex_count)
        throw Error(ErrorKind::InvalidSurface,
                    "face " + std::to_string(f) + " references vertex " + std::to_string(vk));
      const int h = 3 * f + k;
      s.origin_[h] = vk;
      s.next_[h] = 3 * f + (k + 1) % 3;
      s.face_[h] = f;
    }
    s.face_half_[f] = 3 * f;
  }

  // Explicit edge ids: collect uses per id.
  int max_eid = -1;
  for (const auto& f : faces)
    for (int k = 0; k < 3; ++k) max_eid = std::max(max_eid, f.e[k]);

  std::vector<std::vector<int>> uses(max_eid + 1);
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < 3; ++k)
      if (faces[f].e[k] >= 0) uses[faces[f].e[k]].push_back(3 * f + k);

  // Implicit sides pair up by unordered vertex pair.
  std::map<std::pair<int, int>, std::vector<int>> by_pair;
  for (int f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) {
      if (faces[f].e[k] >= 0) continue;
      const int h = 3 * f + k;
      const int a = s.origin_[h], b = s.origin_[s.next_[h]];
      by_pair[{std::min(a, b), std::max(a, b)}].push_back(h);
    }
  }

  int next_edge = 0;
  auto bind = [&](const std::vector<int>& hs, const std::string& what) {
    if (hs.size() != 2)
      throw Error(ErrorKind::InvalidSurface,
                  "non-manifold edge " + what + ": used by " + std::to_string(hs.size()) +
                      " face sides, expected 2");
    const int h0 = hs[0], h1 = hs[1];
    const int a0 = s.origin_[h0], b0 = s.origin_[s.next_[h0]];
    const int a1 = s.origin_[h1], b1 = s.origin_[s.next_[h1]];
    if (std::minmax(a0, b0) != std::minmax(a1, b1))
      throw Error(ErrorKind::InvalidSurface,
                  "edge " + what + " bound to sides with different endpoints");
    if (a0 != b0 && a0 != b1)
      throw Error(ErrorKind::InvalidSurface,
                  "orientation mismatch at edge " + what +
                      ": both faces traverse it in the same direction");
    s.twin_[h0] = h1;
    s.twin_[h1] = h0;
    const int e = next_edge++;
    s.edge_[h0] = e;
    s.edge_[h1] = e;
    s.edge_half_.push_back(h0);
  };

  // Deterministic edge numbering: first appearance scanning faces then sides.
  std::vector<bool> eid_done(max_eid + 1, false);
  for (int f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) {
      const int h = 3 * f + k;
      if (s.edge_[h] >= 0) continue;
      const int eid = faces[f].e[k];
      if (eid >= 0) {
        if (eid_done[eid])
          throw Error(ErrorKind::InvalidSurface, "edge id " + std::to_string(eid) + " reused");
        bind(uses[eid], "#" + std::to_string(eid));
        eid_done[eid] = true;
      } else {
        const int a = s.origin_[h], b = s.origin_[s.next_[h]];
        bind(by_pair[{std::min(a, b), std::max(a, b)}], side_name(faces[f], k));
      }
    }
  }

  s.chi_ = s.vertex_count_ - s.edge_count() + s.face_count();
  s.validate();
  return s;
}

void MarkedSurface::validate() const {
  const int nh = halfedge_count();
  for (int h = 0; h < nh; ++h) {
    if (twin_[h] < 0 || twin_[twin_[h]] != h || twin_[h] == h)
      throw Error(ErrorKind::InvalidSurface, "twin structure broken at half-edge " +
                                                 std::to_string(h));
    if (next_[next_[next_[h]]] != h)
      throw Error(ErrorKind::InvalidSurface, "face of half-edge " + std::to_string(h) +
                                                 " is not a triangle");
  }

  // Connectivity over faces through twins.
  std::vector<bool> seen(face_count(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    int h = face_half_[f];
    for (int k = 0; k < 3; ++k, h = next_[h]) {
      const int g = face_[twin_[h]];
      if (!seen[g]) {
        seen[g] = true;
        ++reached;
        stack.push_back(g);
      }
    }
  }
  if (reached != face_count())
    throw Error(ErrorKind::InvalidSurface, "surface is disconnected");

  // Every vertex must carry at least one corner, and its link must be a
  // single cycle (manifold vertex star).
  std::vector<int> star_size(vertex_count_, 0);
  for (int h = 0; h < nh; ++h) ++star_size[origin_[h]];
  for (int v = 0; v < vertex_count_; ++v)
    if (star_size[v] == 0)
      throw Error(ErrorKind::InvalidSurface,
                  "vertex " + std::to_string(v) + " is not used by any face");

  std::vector<bool> visited(nh, false);
  int orbits = 0;
  for (int h = 0; h < nh; ++h) {
    if (visited[h]) continue;
    ++orbits;
    int g = h;
    do {
      visited[g] = true;
      g = next_[twin_[g]]; // next outgoing half-edge around origin(h)
    } while (g != h);
  }
  if (orbits != vertex_count_)
    throw Error(ErrorKind::InvalidSurface, "a vertex star is not a single disk");

  if (chi_ > 2 || ((2 - chi_) % 2) != 0)
    throw Error(ErrorKind::InvalidSurface,
                "Euler characteristic " + std::to_string(chi_) +
                    " is not 2-2g for integer g >= 0");
}

std::array<int, 2> MarkedSurface::edge_endpoints(int e) const {
  const int h = edge_half_[e];
  return {origin_[h], origin_[twin_[h]]};
}

bool MarkedSurface::is_loop_edge(int e) const {
  const auto ep = edge_endpoints(e);
  return ep[0] == ep[1];
}

std::array<int, 3> MarkedSurface::face_vertices(int f) const {
  const int h = face_half_[f];
  return {origin_[h], origin_[next_[h]], origin_[next_[next_[h]]]};
}

std::array<int, 3> MarkedSurface::face_edges(int f) const {
  const int h = face_half_[f];
  return {edge_[h], edge_[next_[h]], edge_[next_[next_[h]]]};
}

/*
 *        k                  k
 *      /< \                /|\
 *    hp    hn            hp t hn
 *    /  h > \            / v|  \
 *   i -------j   ==>    i   |   j
 *    \ < t  /            \  |> /
 *    tn    tp            tn h tp
 *      \ v /              \v| /
 *        l                  l
 */
void MarkedSurface::flip_edge_in_place(int e) {
  const int h = edge_half_[e];
  const int t = twin_[h];
  const int f0 = face_[h], f1 = face_[t];
  if (f0 == f1)
    throw Error(ErrorKind::InvalidSurface,
                "flip of edge " + std::to_string(e) +
                    " is combinatorially degenerate: both sides lie in one face");
  const int hn = next_[h], hp = next_[hn];
  const int tn = next_[t], tp = next_[tn];
  const int j = origin_[hn]; // head of h
  const int i = origin_[h];
  const int k = origin_[hp];
  const int l = origin_[tp];
  (void)i;
  (void)j;

  // New faces: f0 = (tn, h, hp) around (i,l,k); f1 = (tp, hn, t) around (l,j,k).
  origin_[h] = l;
  origin_[t] = k;
  next_[tn] = h;
  next_[h] = hp;
  next_[hp] = tn;
  next_[tp] = hn;
  next_[hn] = t;
  next_[t] = tp;
  face_[tn] = f0;
  face_[h] = f0;
  face_[hp] = f0;
  face_[tp] = f1;
  face_[hn] = f1;
  face_[t] = f1;
  face_half_[f0] = h;
  face_half_[f1] = t;
  edge_half_[e] = h;
}

MarkedSurface build_surface(int vertex_count, const std::vector<FaceSpec>& faces) {
  return MarkedSurface::build(vertex_count, faces);
}

int euler_characteristic(const MarkedSurface& s) { return s.euler_characteristic(); }

MarkedSurface flip_edge(const MarkedSurface& s, int e) {
  MarkedSurface out = s;
  out.flip_edge_in_place(e);
  return out;
}

} // namespace plf
