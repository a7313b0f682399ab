#include "stokeslab/recovery.hpp"

#include <stdexcept>

namespace stokeslab {

MidpointField midpoint_lift(const Triangulation& mesh, const PiecewiseField& q) {
  if (mesh.level < 2) throw std::invalid_argument("midpoint lift needs level >= 2");
  MidpointField out;
  out.ncomp = q.ncomp;
  out.values.resize(mesh.n_edges(), q.ncomp);

  std::vector<double> a(q.ncomp), b(q.ncomp);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.is_boundary_edge(e)) continue;
    const Vec2 m =
        0.5 * (mesh.vertices[mesh.edges[e][0]] + mesh.vertices[mesh.edges[e][1]]);
    q.eval(mesh.edge_tris[e][0], m, a.data());
    q.eval(mesh.edge_tris[e][1], m, b.data());
    for (int c = 0; c < q.ncomp; ++c) out.values(e, c) = 0.5 * (a[c] + b[c]);
  }
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (!mesh.is_boundary_edge(e)) continue;
    auto comp = boundary_companion(mesh, e);
    if (mesh.is_boundary_edge(comp.interior_edge) || mesh.is_boundary_edge(comp.opposite_edge))
      throw std::runtime_error("companion midpoint lies on the boundary");
    for (int c = 0; c < q.ncomp; ++c)
      out.values(e, c) = 2.0 * out.values(comp.interior_edge, c) - out.values(comp.opposite_edge, c);
  }
  return out;
}

PiecewiseField lifted_eval(const Triangulation& mesh, const MidpointField& f) {
  auto geo = all_geometry(mesh);
  auto vals = std::make_shared<Eigen::MatrixXd>(f.values);
  auto tri_edges = std::make_shared<std::vector<std::array<int, 3>>>(mesh.tri_edges);
  const int nc = f.ncomp;
  return {nc, [geo, vals, tri_edges, nc](int k, const Vec2& x, double* out) {
            auto psi = (*geo)[k].barycentric(x);
            for (int c = 0; c < nc; ++c) out[c] = 0.0;
            for (int i = 0; i < 3; ++i) {
              const double theta = 1.0 - 2.0 * psi[i];
              const int e = (*tri_edges)[k][i];
              for (int c = 0; c < nc; ++c) out[c] += theta * (*vals)(e, c);
            }
          }};
}

DiscreteField interp_pressure(const Triangulation& mesh, const TensorField& sigma) {
  DiscreteField rt = interpolate_rt(mesh, sigma);
  auto rt_vals = value_field(mesh, rt);
  // the RT interpolant is linear per element, so its mean is the centroid value
  DiscreteField p{DofMap::make(Space::P0, mesh, 1), Eigen::VectorXd(mesh.n_triangles())};
  double buf[4];
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    rt_vals.eval(k, geometry(mesh, k).centroid, buf);
    p.coeffs[k] = 0.5 * (buf[0] + buf[3]);
  }
  return p;
}

PiecewiseField interp_velocity_cr(const Triangulation& mesh, const TensorField& sigma) {
  DiscreteField rt = interpolate_rt(mesh, sigma);
  auto rt_vals = value_field(mesh, rt);
  Eigen::MatrixXd data(mesh.n_triangles(), 4);
  double buf[4];
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    rt_vals.eval(k, geometry(mesh, k).centroid, buf);
    const double half_tr = 0.5 * (buf[0] + buf[3]);
    data(k, 0) = buf[0] - half_tr;
    data(k, 1) = buf[1];
    data(k, 2) = buf[2];
    data(k, 3) = buf[3] - half_tr;
  }
  return piecewise_constant(mesh, std::move(data));
}

PiecewiseField interp_velocity_ecr(const Triangulation& mesh, const TensorField& sigma) {
  DiscreteField rt = interpolate_rt(mesh, sigma);
  DiscreteField php = interp_pressure(mesh, sigma);
  auto rt_vals = std::make_shared<PiecewiseField>(value_field(mesh, rt));
  auto p0 = std::make_shared<Eigen::VectorXd>(php.coeffs);
  return {4, [rt_vals, p0](int k, const Vec2& x, double* out) {
            rt_vals->eval(k, x, out);
            out[0] -= (*p0)[k];
            out[3] -= (*p0)[k];
          }};
}

RecoveredFields recover_all(const Triangulation& mesh, Space method,
                            const SourceSolution* nonconforming, const SourceSolution* rt) {
  RecoveredFields out;
  if (method != Space::CR && method != Space::ECR && method != Space::RT)
    throw std::invalid_argument("recovery method must be CR, ECR or RT");
  if (nonconforming) {
    if (nonconforming->primary.map.space != method || method == Space::RT)
      throw std::invalid_argument("nonconforming solution does not match the method");
    if (nonconforming->primary.map.n_edges != mesh.n_edges())
      throw std::invalid_argument("solution was computed on a different mesh");
    out.grad_u = midpoint_lift(mesh, gradient_field(mesh, nonconforming->primary));
    out.pressure = midpoint_lift(mesh, value_field(mesh, nonconforming->secondary));
  }
  if (rt) {
    if (rt->primary.map.space != Space::RT || rt->primary.map.n_edges != mesh.n_edges())
      throw std::invalid_argument("pseudostress solution does not match the mesh");
    auto means = cell_means(mesh, value_field(mesh, rt->primary), 2);
    out.sigma = midpoint_lift(mesh, piecewise_constant(mesh, std::move(means)));
  }
  return out;
}

}  // namespace stokeslab
