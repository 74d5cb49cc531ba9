#include "plf/io.hpp"

#include "plf/geometry.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace plf {

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, name + ":" + std::to_string(line) + ": " + msg, line);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, const std::string& name, int line) {
  try {
    size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    parse_fail(name, line, "expected an integer, got '" + tok + "'");
  }
}

double parse_double(const std::string& tok, const std::string& name, int line) {
  try {
    size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    parse_fail(name, line, "expected a number, got '" + tok + "'");
  }
}

} // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

SurfaceBundle parse_surface_file(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  int nv = -1;

  struct EdgeDecl {
    int a, b;
    int line;
    int dense = -1;
  };
  std::map<int, EdgeDecl> edges; // by file id
  std::vector<FaceSpec> faces;
  std::vector<std::array<int, 3>> face_file_eids;
  struct LenRec {
    bool by_id;
    int id, a, b;
    double value;
    int line;
  };
  std::vector<LenRec> lens;

  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tok = tokenize(line);
    if (tok.empty()) continue;

    if (!header_seen) {
      if (tok.size() != 2 || tok[0] != "plfsurf" || tok[1] != "1")
        parse_fail(name, lineno, "expected header 'plfsurf 1'");
      header_seen = true;
      continue;
    }
    if (tok[0] == "nv") {
      if (tok.size() != 2) parse_fail(name, lineno, "nv takes one count");
      nv = parse_int(tok[1], name, lineno);
      if (nv < 1) parse_fail(name, lineno, "vertex count must be positive");
    } else if (tok[0] == "e") {
      if (tok.size() != 4) parse_fail(name, lineno, "edge record is 'e id i j'");
      const int id = parse_int(tok[1], name, lineno);
      const int a = parse_int(tok[2], name, lineno);
      const int b = parse_int(tok[3], name, lineno);
      if (edges.count(id)) parse_fail(name, lineno, "edge id declared twice");
      edges[id] = EdgeDecl{a, b, lineno};
    } else if (tok[0] == "f") {
      if (tok.size() != 4 && tok.size() != 7)
        parse_fail(name, lineno, "face record is 'f i j k' or 'f i j k e1 e2 e3'");
      FaceSpec fs;
      std::array<int, 3> eids{-1, -1, -1};
      for (int k = 0; k < 3; ++k) fs.v[k] = parse_int(tok[1 + k], name, lineno) - 1;
      if (tok.size() == 7)
        for (int k = 0; k < 3; ++k) eids[k] = parse_int(tok[4 + k], name, lineno);
      faces.push_back(fs);
      face_file_eids.push_back(eids);
    } else if (tok[0] == "len") {
      if (tok.size() == 3) {
        lens.push_back(LenRec{true, parse_int(tok[1], name, lineno), -1, -1,
                              parse_double(tok[2], name, lineno), lineno});
      } else if (tok.size() == 4) {
        lens.push_back(LenRec{false, -1, parse_int(tok[1], name, lineno) - 1,
                              parse_int(tok[2], name, lineno) - 1,
                              parse_double(tok[3], name, lineno), lineno});
      } else {
        parse_fail(name, lineno, "length record is 'len id L' or 'len i j L'");
      }
    } else {
      parse_fail(name, lineno, "unknown record '" + tok[0] + "'");
    }
  }
  if (!header_seen) parse_fail(name, lineno, "missing 'plfsurf 1' header");
  if (nv < 1) parse_fail(name, lineno, "missing 'nv' record");
  if (faces.empty()) parse_fail(name, lineno, "no faces");

  // densify explicit edge ids in declaration order
  int next_dense = 0;
  for (auto& [id, decl] : edges) decl.dense = next_dense++;

  for (size_t f = 0; f < faces.size(); ++f) {
    for (int k = 0; k < 3; ++k) {
      const int fid = face_file_eids[f][k];
      if (fid < 0) continue;
      const auto it = edges.find(fid);
      if (it == edges.end())
        parse_fail(name, lineno, "face references undeclared edge id " + std::to_string(fid));
      const int va = faces[f].v[k], vb = faces[f].v[(k + 1) % 3];
      const std::pair<int, int> want = std::minmax(it->second.a - 1, it->second.b - 1);
      if (std::pair<int, int>(std::minmax(va, vb)) != want)
        throw Error(ErrorKind::ParseError,
                    name + ":" + std::to_string(it->second.line) + ": edge " +
                        std::to_string(fid) + " endpoints do not match its face side",
                    it->second.line);
      faces[f].e[k] = it->second.dense;
    }
  }

  MarkedSurface s = build_surface(nv, faces);

  // map file edge ids / vertex pairs onto internal edge ids
  std::vector<int> internal_of_dense(edges.size(), -1);
  std::map<std::pair<int, int>, std::vector<int>> by_pair;
  for (int e = 0; e < s.edge_count(); ++e) {
    const auto ep = s.edge_endpoints(e);
    by_pair[{std::min(ep[0], ep[1]), std::max(ep[0], ep[1])}].push_back(e);
  }
  for (size_t f = 0; f < faces.size(); ++f) {
    const auto internal = s.face_edges(static_cast<int>(f));
    for (int k = 0; k < 3; ++k)
      if (faces[f].e[k] >= 0) internal_of_dense[faces[f].e[k]] = internal[k];
  }

  DiscreteMetric m;
  m.len.assign(s.edge_count(), -1.0);
  for (const auto& rec : lens) {
    int target = -1;
    if (rec.by_id) {
      const auto it = edges.find(rec.id);
      if (it == edges.end())
        parse_fail(name, rec.line, "length references undeclared edge id " +
                                       std::to_string(rec.id));
      target = internal_of_dense[it->second.dense];
    } else {
      const auto it = by_pair.find(std::minmax(rec.a, rec.b));
      if (it == by_pair.end())
        parse_fail(name, rec.line, "length references a nonexistent edge");
      if (it->second.size() != 1)
        parse_fail(name, rec.line,
                   "vertex pair is ambiguous (multi-edge); use 'len id L'");
      target = it->second[0];
    }
    if (!(rec.value > 0)) parse_fail(name, rec.line, "edge length must be positive");
    if (m.len[target] >= 0) parse_fail(name, rec.line, "duplicate length for an edge");
    m.len[target] = rec.value;
  }
  for (int e = 0; e < s.edge_count(); ++e)
    if (m.len[e] < 0)
      throw Error(ErrorKind::ParseError, name + ": no length given for edge " +
                                             std::to_string(e + 1));

  validate_metric(s, m); // throws InvalidMetric naming the face
  return SurfaceBundle{std::move(s), std::move(m)};
}

SurfaceBundle load_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  return parse_surface_file(in, path);
}

std::string serialize_surface_file(const MarkedSurface& s, const DiscreteMetric& m) {
  std::ostringstream out;
  out << "plfsurf 1\n";
  out << "nv " << s.vertex_count() << "\n";
  for (int e = 0; e < s.edge_count(); ++e) {
    const auto ep = s.edge_endpoints(e);
    out << "e " << e + 1 << " " << ep[0] + 1 << " " << ep[1] + 1 << "\n";
  }
  for (int f = 0; f < s.face_count(); ++f) {
    const auto v = s.face_vertices(f);
    const auto e = s.face_edges(f);
    out << "f " << v[0] + 1 << " " << v[1] + 1 << " " << v[2] + 1 << " " << e[0] + 1 << " "
        << e[1] + 1 << " " << e[2] + 1 << "\n";
  }
  for (int e = 0; e < s.edge_count(); ++e)
    out << "len " << e + 1 << " " << format_number(m.len[e]) << "\n";
  return out.str();
}

ObjImport import_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);

  std::vector<std::array<double, 3>> pos;
  std::vector<std::array<int, 3>> tris;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokenize(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "v") {
      if (tok.size() < 4) parse_fail(path, lineno, "vertex needs three coordinates");
      pos.push_back({parse_double(tok[1], path, lineno), parse_double(tok[2], path, lineno),
                     parse_double(tok[3], path, lineno)});
    } else if (tok[0] == "f") {
      if (tok.size() != 4)
        parse_fail(path, lineno, "face is not a triangle (" +
                                     std::to_string(tok.size() - 1) + " corners)");
      std::array<int, 3> t;
      for (int k = 0; k < 3; ++k) {
        std::string idx = tok[1 + k];
        if (const auto slash = idx.find('/'); slash != std::string::npos)
          idx = idx.substr(0, slash);
        t[k] = parse_int(idx, path, lineno);
        if (t[k] < 0) t[k] = static_cast<int>(pos.size()) + 1 + t[k]; // negative indexing
        t[k] -= 1;
        if (t[k] < 0 || t[k] >= static_cast<int>(pos.size()))
          parse_fail(path, lineno, "face references unknown vertex");
      }
      tris.push_back(t);
    }
    // other obj records are ignored
  }
  if (tris.empty()) throw Error(ErrorKind::ParseError, path + ": no faces");

  // boundary / non-manifold detection before handing to the builder
  std::map<std::pair<int, int>, int> uses;
  for (const auto& t : tris)
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      ++uses[{std::min(a, b), std::max(a, b)}];
    }
  for (const auto& [pair, count] : uses) {
    if (count == 1)
      throw Error(ErrorKind::InvalidSurface,
                  path + ": boundary edge (" + std::to_string(pair.first + 1) + "," +
                      std::to_string(pair.second + 1) + "); mesh is not closed");
    if (count > 2)
      throw Error(ErrorKind::InvalidSurface,
                  path + ": non-manifold edge (" + std::to_string(pair.first + 1) + "," +
                      std::to_string(pair.second + 1) + ")");
  }

  std::vector<FaceSpec> faces;
  faces.reserve(tris.size());
  for (const auto& t : tris) faces.push_back(FaceSpec{{t[0], t[1], t[2]}});
  MarkedSurface s = build_surface(static_cast<int>(pos.size()), faces);

  DiscreteMetric m;
  m.len.resize(s.edge_count());
  for (int e = 0; e < s.edge_count(); ++e) {
    const auto ep = s.edge_endpoints(e);
    const auto& p = pos[ep[0]];
    const auto& q = pos[ep[1]];
    m.len[e] = std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) +
                         (p[2] - q[2]) * (p[2] - q[2]));
  }
  validate_metric(s, m);

  ObjImport out{SurfaceBundle{std::move(s), std::move(m)}, {}};
  for (int e = 0; e < out.bundle.surface.edge_count(); ++e)
    if (!is_delaunay_edge(out.bundle.surface, out.bundle.metric, e))
      out.non_delaunay_edges.push_back(e);
  return out;
}

std::string curvature_report_text(const CurvatureReport& r) {
  std::ostringstream out;
  double sum_w = 0;
  for (int i = 0; i < r.W.size(); ++i) {
    out << "v " << i + 1 << " " << format_number(r.W[i]) << " " << format_number(r.A[i])
        << " " << format_number(r.K[i]) << "\n";
    sum_w += r.W[i];
  }
  out << "A_tot " << format_number(r.A_tot) << "\n";
  out << "chi " << r.chi << "\n";
  out << "sum_W " << format_number(sum_w) << "\n";
  out << "flips_performed " << r.flips << "\n";
  return out.str();
}

std::string conformal_factor_text(const ConformalFactor& u) {
  std::ostringstream out;
  for (int i = 0; i < u.size(); ++i) out << "u " << i + 1 << " " << format_number(u[i]) << "\n";
  return out.str();
}

ConformalFactor parse_conformal_factor(std::istream& in, int vertex_count,
                                       const std::string& name) {
  ConformalFactor u = Eigen::VectorXd::Zero(vertex_count);
  std::vector<bool> seen(vertex_count, false);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok.size() != 3 || tok[0] != "u")
      parse_fail(name, lineno, "expected 'u <vertex> <value>'");
    const int v = parse_int(tok[1], name, lineno) - 1;
    if (v < 0 || v >= vertex_count) parse_fail(name, lineno, "vertex id out of range");
    if (seen[v]) parse_fail(name, lineno, "duplicate entry for a vertex");
    seen[v] = true;
    u[v] = parse_double(tok[2], name, lineno);
  }
  for (int v = 0; v < vertex_count; ++v)
    if (!seen[v])
      throw Error(ErrorKind::ParseError,
                  name + ": missing value for vertex " + std::to_string(v + 1));
  return u;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + tmp);
    out << content;
    if (!out.good()) {
      std::filesystem::remove(tmp);
      throw Error(ErrorKind::ParseError, "write failed for " + tmp);
    }
  }
  std::filesystem::rename(tmp, path);
}

} // namespace plf
