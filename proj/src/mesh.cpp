#include "stokeslab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stokeslab {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

// Rebuild edges, adjacency and mesh size from vertices + triangles.
void finalize(Triangulation& m) {
  const int nt = m.n_triangles();
  std::map<std::array<int, 2>, int> edge_id;
  for (const auto& t : m.triangles) {
    for (int i = 0; i < 3; ++i) {
      int a = t[(i + 1) % 3], b = t[(i + 2) % 3];
      edge_id[{std::min(a, b), std::max(a, b)}] = -1;
    }
  }
  m.edges.clear();
  m.edges.reserve(edge_id.size());
  int id = 0;
  for (auto& [key, val] : edge_id) {  // std::map iterates lexicographically
    val = id++;
    m.edges.push_back(key);
  }

  m.edge_tris.assign(m.edges.size(), {-1, -1});
  m.tri_edges.assign(nt, {-1, -1, -1});
  m.tri_edge_sign.assign(nt, {0, 0, 0});
  for (int k = 0; k < nt; ++k) {
    const auto& t = m.triangles[k];
    if (signed_area(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]) <= 0.0)
      throw std::runtime_error("triangle " + std::to_string(k) + " is not CCW");
    for (int i = 0; i < 3; ++i) {
      int a = t[(i + 1) % 3], b = t[(i + 2) % 3];
      int e = edge_id.at({std::min(a, b), std::max(a, b)});
      m.tri_edges[k][i] = e;
      auto& adj = m.edge_tris[e];
      if (adj[0] < 0)
        adj[0] = k;
      else if (adj[1] < 0)
        adj[1] = k;
      else
        throw std::runtime_error("edge with more than two adjacent triangles");
    }
  }
  for (auto& adj : m.edge_tris)
    if (adj[1] >= 0 && adj[1] < adj[0]) std::swap(adj[0], adj[1]);

  m.boundary_edge.assign(m.edges.size(), 0);
  for (std::size_t e = 0; e < m.edges.size(); ++e)
    m.boundary_edge[e] = (m.edge_tris[e][1] < 0) ? 1 : 0;

  // canonical edge normal points from edge_tris[e][0] into edge_tris[e][1]
  // (outward for boundary edges), so the sign for a triangle is +1 exactly
  // when it is the first adjacent one
  for (int k = 0; k < nt; ++k)
    for (int i = 0; i < 3; ++i)
      m.tri_edge_sign[k][i] = (m.edge_tris[m.tri_edges[k][i]][0] == k) ? 1 : -1;

  m.h = 0.0;
  for (const auto& t : m.triangles)
    for (int i = 0; i < 3; ++i)
      m.h = std::max(m.h, (m.vertices[t[(i + 1) % 3]] - m.vertices[t[(i + 2) % 3]]).norm());
}

}  // namespace

std::array<double, 3> ElementGeometry::barycentric(const Vec2& x) const {
  std::array<double, 3> psi;
  for (int i = 0; i < 3; ++i) psi[i] = 1.0 + grad_psi[i].dot(x - vertex[i]);
  return psi;
}

bool ElementGeometry::contains(const Vec2& x, double tol) const {
  auto psi = barycentric(x);
  return psi[0] >= -tol && psi[1] >= -tol && psi[2] >= -tol;
}

Triangulation build_uniform(int level) {
  if (level < 1) throw std::invalid_argument("mesh level must be >= 1");
  Triangulation m;
  m.level = 1;
  m.vertices = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  // second triangle is the point reflection of the first through (1/2,1/2);
  // keeping the reflected vertex order makes local edge labels agree
  m.triangles = {{0, 1, 2}, {2, 3, 0}};
  m.parent = {-1, -1};
  finalize(m);
  for (int l = 1; l < level; ++l) m = refine(m);
  return m;
}

Triangulation refine(const Triangulation& mesh) {
  Triangulation fine;
  fine.level = mesh.level + 1;
  fine.vertices = mesh.vertices;
  fine.vertices.reserve(mesh.vertices.size() + mesh.edges.size());
  for (const auto& e : mesh.edges)
    fine.vertices.push_back(0.5 * (mesh.vertices[e[0]] + mesh.vertices[e[1]]));

  const int nv = mesh.n_vertices();
  fine.triangles.reserve(4 * mesh.triangles.size());
  fine.parent.reserve(4 * mesh.triangles.size());
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const auto& t = mesh.triangles[k];
    // midpoint of the edge opposite local vertex i
    int m0 = nv + mesh.tri_edges[k][0];  // midpoint of (v1,v2)
    int m1 = nv + mesh.tri_edges[k][1];  // midpoint of (v2,v0)
    int m2 = nv + mesh.tri_edges[k][2];  // midpoint of (v0,v1)
    fine.triangles.push_back({t[0], m2, m1});
    fine.triangles.push_back({m2, t[1], m0});
    fine.triangles.push_back({m1, m0, t[2]});
    // the central child is a point reflection; this vertex order keeps its
    // local edges parallel to the parent's with matching indices
    fine.triangles.push_back({m0, m1, m2});
    for (int c = 0; c < 4; ++c) fine.parent.push_back(k);
  }
  finalize(fine);
  return fine;
}

ElementGeometry geometry(const Triangulation& mesh, int k) {
  if (k < 0 || k >= mesh.n_triangles()) throw std::invalid_argument("triangle index out of range");
  const auto& t = mesh.triangles[k];
  ElementGeometry g;
  for (int i = 0; i < 3; ++i) g.vertex[i] = mesh.vertices[t[i]];
  g.area = signed_area(g.vertex[0], g.vertex[1], g.vertex[2]);
  if (!(g.area > 1e-300)) throw std::runtime_error("degenerate triangle");
  g.centroid = (g.vertex[0] + g.vertex[1] + g.vertex[2]) / 3.0;
  for (int i = 0; i < 3; ++i) {
    const Vec2 a = g.vertex[(i + 1) % 3];
    const Vec2 b = g.vertex[(i + 2) % 3];
    const Vec2 d = b - a;
    g.edge_length[i] = d.norm();
    g.tangent[i] = d / g.edge_length[i];
    Vec2 n(d.y(), -d.x());
    n.normalize();
    if (n.dot(g.vertex[i] - a) > 0) n = -n;
    g.normal[i] = n;
    g.midpoint[i] = 0.5 * (a + b);
    g.height[i] = 2.0 * g.area / g.edge_length[i];
    g.grad_psi[i] = -n / g.height[i];
  }
  return g;
}

BoundaryCompanion boundary_companion(const Triangulation& mesh, int boundary_edge) {
  if (boundary_edge < 0 || boundary_edge >= mesh.n_edges())
    throw std::invalid_argument("edge index out of range");
  if (!mesh.is_boundary_edge(boundary_edge))
    throw std::invalid_argument("companion rule applies to boundary edges only");

  BoundaryCompanion c;
  c.element = mesh.edge_tris[boundary_edge][0];

  int interior = -1;
  for (int i = 0; i < 3; ++i) {
    int e = mesh.tri_edges[c.element][i];
    if (!mesh.is_boundary_edge(e) && (interior < 0 || e < interior)) interior = e;
  }
  if (interior < 0)
    throw std::runtime_error("boundary element has no interior edge; mesh level too coarse");
  c.interior_edge = interior;
  c.neighbor = mesh.edge_tris[interior][0] == c.element ? mesh.edge_tris[interior][1]
                                                        : mesh.edge_tris[interior][0];

  const auto& be = mesh.edges[boundary_edge];
  int found = -1;
  for (int i = 0; i < 3; ++i) {
    int e = mesh.tri_edges[c.neighbor][i];
    const auto& ev = mesh.edges[e];
    bool touches = ev[0] == be[0] || ev[0] == be[1] || ev[1] == be[0] || ev[1] == be[1];
    if (!touches) {
      if (found >= 0) throw std::runtime_error("companion edge not unique");
      found = e;
    }
  }
  if (found < 0) throw std::runtime_error("no companion edge disjoint from the boundary edge");
  c.opposite_edge = found;
  return c;
}

std::string mesh_to_json(const Triangulation& mesh) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"vertices\":[";
  for (int v = 0; v < mesh.n_vertices(); ++v)
    os << (v ? "," : "") << "[" << mesh.vertices[v].x() << "," << mesh.vertices[v].y() << "]";
  os << "],\"triangles\":[";
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const auto& t = mesh.triangles[k];
    os << (k ? "," : "") << "[" << t[0] << "," << t[1] << "," << t[2] << "]";
  }
  os << "],\"edges\":[";
  for (int e = 0; e < mesh.n_edges(); ++e)
    os << (e ? "," : "") << "[" << mesh.edges[e][0] << "," << mesh.edges[e][1] << "]";
  os << "],\"boundary_edges\":[";
  bool first = true;
  for (int e = 0; e < mesh.n_edges(); ++e)
    if (mesh.is_boundary_edge(e)) {
      os << (first ? "" : ",") << e;
      first = false;
    }
  os << "]}";
  return os.str();
}

}  // namespace stokeslab
