#pragma once

#include <array>
#include <string>
#include <vector>

#include "stokeslab/types.hpp"

namespace stokeslab {

/// Uniform triangulation of the unit square.
///
/// Level 1 is the square cut along the diagonal (0,0)-(1,1); level L+1 is the
/// red (4-way midpoint) refinement of level L. Vertex orderings are chosen so
/// that local edge i of every triangle is parallel to local edge i of the
/// first triangle of level 1; every element is then a translate or a point
/// reflection of a single reference shape.
struct Triangulation {
  int level = 1;
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;   // CCW vertex triples
  std::vector<std::array<int, 2>> edges;       // (min,max) vertex pairs, lexicographic
  std::vector<std::array<int, 2>> edge_tris;   // adjacent triangles, smaller first, -1 if none
  std::vector<std::array<int, 3>> tri_edges;   // edge opposite local vertex i
  std::vector<std::array<int, 3>> tri_edge_sign;  // +1 if canonical edge normal is outward
  std::vector<char> boundary_edge;
  std::vector<int> parent;  // parent triangle in the coarser mesh, -1 at level 1
  double h = 0.0;           // max triangle diameter

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  bool is_boundary_edge(int e) const { return boundary_edge[e] != 0; }
};

/// Per-element geometric quantities. Local edge i is opposite local vertex i.
struct ElementGeometry {
  double area = 0.0;
  Vec2 centroid = Vec2::Zero();
  std::array<Vec2, 3> vertex;
  std::array<double, 3> edge_length;
  std::array<double, 3> height;     // distance from vertex i to edge i
  std::array<Vec2, 3> normal;       // unit outward normal of edge i
  std::array<Vec2, 3> tangent;      // unit tangent of edge i
  std::array<Vec2, 3> midpoint;     // midpoint of edge i
  std::array<Vec2, 3> grad_psi;     // gradient of barycentric coordinate i

  /// Barycentric coordinates of a point.
  std::array<double, 3> barycentric(const Vec2& x) const;
  bool contains(const Vec2& x, double tol = 1e-12) const;
};

Triangulation build_uniform(int level);
Triangulation refine(const Triangulation& mesh);
ElementGeometry geometry(const Triangulation& mesh, int k);

/// Companion data used by the boundary rule of the midpoint lift: for a
/// boundary edge e, `element` contains e, `interior_edge` is the interior edge
/// of `element` with the smallest global index, `neighbor` lies across it, and
/// `opposite_edge` is the edge of `neighbor` sharing no vertex with e.
struct BoundaryCompanion {
  int element = -1;
  int neighbor = -1;
  int interior_edge = -1;
  int opposite_edge = -1;
};

BoundaryCompanion boundary_companion(const Triangulation& mesh, int boundary_edge);

/// JSON dump with arrays `vertices`, `triangles`, `edges`, `boundary_edges`.
std::string mesh_to_json(const Triangulation& mesh);

}  // namespace stokeslab
