#pragma once

#include "plf/error.hpp"

#include <array>
#include <vector>

namespace plf {

// One face of the input complex: three vertex ids in CCW order, and
// optionally the explicit edge ids of the sides (v0v1, v1v2, v2v0).
// Explicit ids are required wherever vertex pairs are ambiguous
// (multi-edges, and loops that share endpoints).
struct FaceSpec {
  std::array<int, 3> v{-1, -1, -1};
  std::array<int, 3> e{-1, -1, -1};
};

// Closed oriented triangulated marked surface in a half-edge representation.
// Loop edges and multi-edges are first class: edge identity is carried by
// explicit ids, never by vertex pairs. Instances are immutable in normal use;
// flip_edge returns a modified copy. flip_edge_in_place exists as the
// building block for flip loops that own their working copy.
class MarkedSurface {
public:
  static MarkedSurface build(int vertex_count, const std::vector<FaceSpec>& faces);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edge_half_.size()); }
  int face_count() const { return static_cast<int>(face_half_.size()); }
  int halfedge_count() const { return static_cast<int>(next_.size()); }
  int euler_characteristic() const { return chi_; }

  int next(int h) const { return next_[h]; }
  int prev(int h) const { return next_[next_[h]]; } // next^2 == prev on triangles
  int twin(int h) const { return twin_[h]; }
  int origin(int h) const { return origin_[h]; }
  int head(int h) const { return origin_[twin_[h]]; }
  int face(int h) const { return face_[h]; }
  int edge(int h) const { return edge_[h]; }

  int halfedge_of_edge(int e) const { return edge_half_[e]; }
  int halfedge_of_face(int f) const { return face_half_[f]; }

  std::array<int, 2> edge_endpoints(int e) const;
  bool is_loop_edge(int e) const;

  // Vertex triple of a face in CCW order starting at its anchor half-edge.
  std::array<int, 3> face_vertices(int f) const;
  // Edge ids of the corresponding sides.
  std::array<int, 3> face_edges(int f) const;

  // CCW flip of edge e inside the quadrilateral of its two adjacent faces.
  // Throws when the two faces coincide (combinatorially degenerate flip).
  void flip_edge_in_place(int e);

private:
  MarkedSurface() = default;
  void validate() const;

  int vertex_count_ = 0;
  int chi_ = 0;
  std::vector<int> next_, twin_, origin_, face_, edge_;
  std::vector<int> edge_half_; // edge id -> representative half-edge
  std::vector<int> face_half_; // face id -> anchor half-edge
};

// Spec operations as free functions.
MarkedSurface build_surface(int vertex_count, const std::vector<FaceSpec>& faces);
int euler_characteristic(const MarkedSurface& s);
MarkedSurface flip_edge(const MarkedSurface& s, int e);

} // namespace plf
