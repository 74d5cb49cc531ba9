#pragma once

#include "plf/conformal.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace plf {

struct SurfaceBundle {
  MarkedSurface surface;
  DiscreteMetric metric;
};

// plfsurf text format:
//   plfsurf 1
//   nv <N>
//   e <id> <i> <j>                 optional edge declarations (1-based)
//   f <i> <j> <k>                  face by vertices, or
//   f <i> <j> <k> <e1> <e2> <e3>   face with explicit edge ids per side
//   len <id> <L>                   length by edge id, or
//   len <i> <j> <L>                length by (unambiguous) vertex pair
// '#' lines and blank lines are ignored. Explicit ids are required for
// loops and multi-edges; the serializer always emits the explicit form in
// canonical order, so serialize(parse(x)) is byte-stable.
SurfaceBundle parse_surface_file(std::istream& in, const std::string& name);
SurfaceBundle load_surface_file(const std::string& path);
std::string serialize_surface_file(const MarkedSurface& s, const DiscreteMetric& m);

struct ObjImport {
  SurfaceBundle bundle;
  std::vector<int> non_delaunay_edges; // informational; make_delaunay handles them
};

// Wavefront import: closed oriented triangle meshes only; edge lengths are
// measured from vertex positions.
ObjImport import_obj(const std::string& path);

// 12 significant digits, locale independent.
std::string format_number(double x);

std::string curvature_report_text(const CurvatureReport& r);
std::string conformal_factor_text(const ConformalFactor& u);
ConformalFactor parse_conformal_factor(std::istream& in, int vertex_count,
                                       const std::string& name);

// Writes through a temporary file and renames on success, so failed commands
// never leave partial outputs.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace plf
