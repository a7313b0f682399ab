#include "stokeslab/spaces.hpp"

#include <stdexcept>

#include "stokeslab/quadrature.hpp"

namespace stokeslab {

DofMap DofMap::make(Space s, const Triangulation& mesh, int p0_comp) {
  DofMap m;
  m.space = s;
  m.n_edges = mesh.n_edges();
  m.n_tris = mesh.n_triangles();
  switch (s) {
    case Space::CR:
      m.n_comp = 2;
      m.stride = m.n_edges;
      break;
    case Space::ECR:
      m.n_comp = 2;
      m.stride = m.n_edges + m.n_tris;
      break;
    case Space::P0:
      m.n_comp = p0_comp;
      m.stride = m.n_tris;
      break;
    case Space::RT:
      m.n_comp = 2;
      m.stride = m.n_edges;
      break;
  }
  m.n_dofs = m.n_comp * m.stride;
  return m;
}

std::shared_ptr<const std::vector<ElementGeometry>> all_geometry(const Triangulation& mesh) {
  auto g = std::make_shared<std::vector<ElementGeometry>>();
  g->reserve(mesh.n_triangles());
  for (int k = 0; k < mesh.n_triangles(); ++k) g->push_back(geometry(mesh, k));
  return g;
}

namespace {

// mean of an expression over edge e
template <class F>
auto edge_mean(const Triangulation& mesh, int e, int degree, F&& f) {
  const Vec2 a = mesh.vertices[mesh.edges[e][0]];
  const Vec2 b = mesh.vertices[mesh.edges[e][1]];
  const auto& rule = edge_rule(degree);
  auto acc = f(Vec2(a + rule.points[0] * (b - a)));
  acc *= rule.weights[0];
  for (std::size_t q = 1; q < rule.points.size(); ++q)
    acc += rule.weights[q] * f(Vec2(a + rule.points[q] * (b - a)));
  return acc;
}

constexpr int kInterpEdgeDegree = 11;
constexpr int kInterpTriDegree = 10;

}  // namespace

Eigen::Matrix4d ecr_local_basis(const ElementGeometry& g) {
  // dual matrix D(a,b) = dof_a(mono_b); dofs are edge means and element mean
  Eigen::Matrix4d D;
  for (int a = 0; a < 3; ++a) {
    const Vec2 p = g.vertex[(a + 1) % 3] - g.centroid;
    const Vec2 q = g.vertex[(a + 2) % 3] - g.centroid;
    const Vec2 mid = 0.5 * (p + q);
    D(a, 0) = 1.0;
    D(a, 1) = mid.x();
    D(a, 2) = mid.y();
    // Simpson along the edge is exact for the quadratic monomial
    D(a, 3) = (p.squaredNorm() + 4.0 * mid.squaredNorm() + q.squaredNorm()) / 6.0;
  }
  D(3, 0) = 1.0;
  D(3, 1) = D(3, 2) = 0.0;
  double m2 = 0.0;  // mean of |x-M|^2
  const auto& rule = tri_rule(2);
  for (std::size_t qp = 0; qp < rule.points.size(); ++qp) {
    Vec2 x = rule.points[qp][0] * g.vertex[0] + rule.points[qp][1] * g.vertex[1] +
             rule.points[qp][2] * g.vertex[2];
    m2 += rule.weights[qp] * (x - g.centroid).squaredNorm();
  }
  D(3, 3) = m2;
  return D.inverse();
}

DiscreteField interpolate_cr(const Triangulation& mesh, const VectorField& v) {
  if (!v.value) throw std::invalid_argument("field has no value callable");
  DiscreteField u{DofMap::make(Space::CR, mesh), {}};
  u.coeffs.resize(u.map.n_dofs);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    Vec2 m = edge_mean(mesh, e, kInterpEdgeDegree, v.value);
    u.coeffs[u.map.edge_dof(0, e)] = m.x();
    u.coeffs[u.map.edge_dof(1, e)] = m.y();
  }
  return u;
}

DiscreteField interpolate_ecr(const Triangulation& mesh, const VectorField& v) {
  if (!v.value) throw std::invalid_argument("field has no value callable");
  DiscreteField u{DofMap::make(Space::ECR, mesh), {}};
  u.coeffs.resize(u.map.n_dofs);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    Vec2 m = edge_mean(mesh, e, kInterpEdgeDegree, v.value);
    u.coeffs[u.map.edge_dof(0, e)] = m.x();
    u.coeffs[u.map.edge_dof(1, e)] = m.y();
  }
  const auto& rule = tri_rule(kInterpTriDegree);
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const auto& t = mesh.triangles[k];
    Vec2 mean = Vec2::Zero();
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      Vec2 x = rule.points[q][0] * mesh.vertices[t[0]] + rule.points[q][1] * mesh.vertices[t[1]] +
               rule.points[q][2] * mesh.vertices[t[2]];
      mean += rule.weights[q] * v.value(x);
    }
    u.coeffs[u.map.bubble_dof(0, k)] = mean.x();
    u.coeffs[u.map.bubble_dof(1, k)] = mean.y();
  }
  return u;
}

DiscreteField interpolate_rt(const Triangulation& mesh, const TensorField& tau) {
  if (!tau.value) throw std::invalid_argument("field has no value callable");
  DiscreteField u{DofMap::make(Space::RT, mesh), {}};
  u.coeffs.resize(u.map.n_dofs);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Vec2 a = mesh.vertices[mesh.edges[e][0]];
    const Vec2 b = mesh.vertices[mesh.edges[e][1]];
    const double len = (b - a).norm();
    // canonical normal: outward for the first adjacent triangle
    const int k0 = mesh.edge_tris[e][0];
    int local = 0;
    while (mesh.tri_edges[k0][local] != e) ++local;
    const Vec2 n = geometry(mesh, k0).normal[local];
    Vec2 flux = len * edge_mean(mesh, e, kInterpEdgeDegree,
                                [&](const Vec2& x) -> Vec2 { return tau.value(x) * n; });
    u.coeffs[u.map.edge_dof(0, e)] = flux.x();
    u.coeffs[u.map.edge_dof(1, e)] = flux.y();
  }
  return u;
}

Eigen::MatrixXd cell_means(const Triangulation& mesh, const PiecewiseField& f, int degree) {
  const auto& rule = tri_rule(degree);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(mesh.n_triangles(), f.ncomp);
  std::vector<double> buf(f.ncomp);
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const auto& t = mesh.triangles[k];
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      Vec2 x = rule.points[q][0] * mesh.vertices[t[0]] + rule.points[q][1] * mesh.vertices[t[1]] +
               rule.points[q][2] * mesh.vertices[t[2]];
      f.eval(k, x, buf.data());
      for (int c = 0; c < f.ncomp; ++c) out(k, c) += rule.weights[q] * buf[c];
    }
  }
  return out;
}

PiecewiseField piecewise_constant(const Triangulation& mesh, Eigen::MatrixXd data) {
  if (data.rows() != mesh.n_triangles()) throw std::invalid_argument("one row per element required");
  auto shared = std::make_shared<Eigen::MatrixXd>(std::move(data));
  return {static_cast<int>(shared->cols()), [shared](int k, const Vec2&, double* out) {
            for (int c = 0; c < shared->cols(); ++c) out[c] = (*shared)(k, c);
          }};
}

DiscreteField project_p0(const Triangulation& mesh, const ScalarField& f, int degree) {
  if (!f.value) throw std::invalid_argument("field has no value callable");
  DiscreteField u{DofMap::make(Space::P0, mesh, 1), {}};
  u.coeffs = cell_means(mesh, to_piecewise(f), degree).col(0);
  return u;
}

DiscreteField project_p0(const Triangulation& mesh, const PiecewiseField& f, int degree) {
  if (f.ncomp != 1) throw std::invalid_argument("scalar field expected");
  DiscreteField u{DofMap::make(Space::P0, mesh, 1), {}};
  u.coeffs = cell_means(mesh, f, degree).col(0);
  return u;
}

namespace {

struct EcrElemData {
  Vec2 centroid;
  // monomial coefficients {1, xi, eta, xi^2+eta^2} per velocity component
  Eigen::Matrix<double, 4, 2> coef;
};

std::shared_ptr<std::vector<EcrElemData>> ecr_elem_data(const Triangulation& mesh,
                                                        const DiscreteField& u) {
  auto data = std::make_shared<std::vector<EcrElemData>>(mesh.n_triangles());
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    auto g = geometry(mesh, k);
    Eigen::Matrix4d basis = ecr_local_basis(g);
    Eigen::Matrix<double, 4, 2> dofs;
    for (int c = 0; c < 2; ++c) {
      for (int a = 0; a < 3; ++a) dofs(a, c) = u.coeffs[u.map.edge_dof(c, mesh.tri_edges[k][a])];
      dofs(3, c) = u.coeffs[u.map.bubble_dof(c, k)];
    }
    (*data)[k].centroid = g.centroid;
    (*data)[k].coef = basis * dofs;
  }
  return data;
}

struct RtElemData {
  // row value = cst + slope * x
  std::array<Vec2, 2> cst;
  std::array<double, 2> slope;
};

std::shared_ptr<std::vector<RtElemData>> rt_elem_data(const Triangulation& mesh,
                                                      const DiscreteField& u) {
  auto data = std::make_shared<std::vector<RtElemData>>(mesh.n_triangles());
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    auto g = geometry(mesh, k);
    RtElemData d{{Vec2::Zero(), Vec2::Zero()}, {0.0, 0.0}};
    for (int i = 0; i < 3; ++i) {
      const double s = mesh.tri_edge_sign[k][i] / (2.0 * g.area);
      for (int r = 0; r < 2; ++r) {
        const double c = u.coeffs[u.map.edge_dof(r, mesh.tri_edges[k][i])];
        d.slope[r] += s * c;
        d.cst[r] -= s * c * g.vertex[i];
      }
    }
    (*data)[k] = d;
  }
  return data;
}

}  // namespace

PiecewiseField value_field(const Triangulation& mesh, const DiscreteField& u) {
  switch (u.map.space) {
    case Space::P0: {
      auto coeffs = std::make_shared<Eigen::VectorXd>(u.coeffs);
      const int nc = u.map.n_comp, stride = u.map.stride;
      return {nc, [coeffs, nc, stride](int k, const Vec2&, double* out) {
                for (int c = 0; c < nc; ++c) out[c] = (*coeffs)[c * stride + k];
              }};
    }
    case Space::CR: {
      auto geo = all_geometry(mesh);
      auto coeffs = std::make_shared<Eigen::VectorXd>(u.coeffs);
      auto map = u.map;
      auto tri_edges = std::make_shared<std::vector<std::array<int, 3>>>(mesh.tri_edges);
      return {2, [geo, coeffs, map, tri_edges](int k, const Vec2& x, double* out) {
                auto psi = (*geo)[k].barycentric(x);
                out[0] = out[1] = 0.0;
                for (int i = 0; i < 3; ++i) {
                  const double theta = 1.0 - 2.0 * psi[i];
                  out[0] += theta * (*coeffs)[map.edge_dof(0, (*tri_edges)[k][i])];
                  out[1] += theta * (*coeffs)[map.edge_dof(1, (*tri_edges)[k][i])];
                }
              }};
    }
    case Space::ECR: {
      auto data = ecr_elem_data(mesh, u);
      return {2, [data](int k, const Vec2& x, double* out) {
                const auto& d = (*data)[k];
                const Vec2 xi = x - d.centroid;
                const Eigen::Vector4d mono(1.0, xi.x(), xi.y(), xi.squaredNorm());
                for (int c = 0; c < 2; ++c) out[c] = d.coef.col(c).dot(mono);
              }};
    }
    case Space::RT: {
      auto data = rt_elem_data(mesh, u);
      return {4, [data](int k, const Vec2& x, double* out) {
                const auto& d = (*data)[k];
                for (int r = 0; r < 2; ++r) {
                  out[2 * r] = d.cst[r].x() + d.slope[r] * x.x();
                  out[2 * r + 1] = d.cst[r].y() + d.slope[r] * x.y();
                }
              }};
    }
  }
  throw std::logic_error("unreachable");
}

PiecewiseField gradient_field(const Triangulation& mesh, const DiscreteField& u) {
  switch (u.map.space) {
    case Space::CR: {
      // constant per element: precompute
      auto grads = std::make_shared<std::vector<Mat2>>(mesh.n_triangles());
      for (int k = 0; k < mesh.n_triangles(); ++k) {
        auto g = geometry(mesh, k);
        Mat2 j = Mat2::Zero();
        for (int i = 0; i < 3; ++i) {
          const Vec2 gtheta = -2.0 * g.grad_psi[i];
          for (int c = 0; c < 2; ++c)
            j.row(c) += u.coeffs[u.map.edge_dof(c, mesh.tri_edges[k][i])] * gtheta.transpose();
        }
        (*grads)[k] = j;
      }
      return {4, [grads](int k, const Vec2&, double* out) {
                const Mat2& j = (*grads)[k];
                out[0] = j(0, 0);
                out[1] = j(0, 1);
                out[2] = j(1, 0);
                out[3] = j(1, 1);
              }};
    }
    case Space::ECR: {
      auto data = ecr_elem_data(mesh, u);
      return {4, [data](int k, const Vec2& x, double* out) {
                const auto& d = (*data)[k];
                const Vec2 xi = x - d.centroid;
                for (int c = 0; c < 2; ++c) {
                  out[2 * c] = d.coef(1, c) + 2.0 * d.coef(3, c) * xi.x();
                  out[2 * c + 1] = d.coef(2, c) + 2.0 * d.coef(3, c) * xi.y();
                }
              }};
    }
    default:
      throw std::invalid_argument("gradient_field supports CR and ECR fields");
  }
}

std::vector<double> eval_local_scalar(Space s, const Triangulation& mesh, int k, const Vec2& x,
                                      bool checked) {
  auto g = geometry(mesh, k);
  if (checked && !g.contains(x, 1e-10)) throw std::invalid_argument("point outside element");
  auto psi = g.barycentric(x);
  switch (s) {
    case Space::P0:
      return {1.0};
    case Space::CR:
      return {1.0 - 2.0 * psi[0], 1.0 - 2.0 * psi[1], 1.0 - 2.0 * psi[2]};
    case Space::ECR: {
      Eigen::Matrix4d basis = ecr_local_basis(g);
      const Vec2 xi = x - g.centroid;
      const Eigen::Vector4d mono(1.0, xi.x(), xi.y(), xi.squaredNorm());
      Eigen::Vector4d vals = basis.transpose() * mono;
      return {vals[0], vals[1], vals[2], vals[3]};
    }
    case Space::RT:
      throw std::invalid_argument("RT basis is vector-valued; use eval_local_rt");
  }
  throw std::logic_error("unreachable");
}

std::vector<Vec2> eval_local_rt(const Triangulation& mesh, int k, const Vec2& x, bool checked) {
  auto g = geometry(mesh, k);
  if (checked && !g.contains(x, 1e-10)) throw std::invalid_argument("point outside element");
  std::vector<Vec2> out(3);
  for (int i = 0; i < 3; ++i)
    out[i] = mesh.tri_edge_sign[k][i] * (x - g.vertex[i]) / (2.0 * g.area);
  return out;
}

}  // namespace stokeslab
