#include "stokeslab/assembly.hpp"

#include <stdexcept>

#include "stokeslab/quadrature.hpp"

namespace stokeslab {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

constexpr int kAssemblyDegree = 4;  // all bilinear-form integrands have degree <= 4

// reduced numbering over velocity dofs: boundary-edge dofs eliminated
void velocity_reduction(Space s, const Triangulation& mesh, const DofMap& map,
                        std::vector<int>& free_of_full, std::vector<int>& full_of_free) {
  free_of_full.assign(map.n_dofs, -1);
  full_of_free.clear();
  for (int c = 0; c < map.n_comp; ++c) {
    for (int e = 0; e < map.n_edges; ++e) {
      if (mesh.is_boundary_edge(e)) continue;
      free_of_full[map.edge_dof(c, e)] = static_cast<int>(full_of_free.size());
      full_of_free.push_back(map.edge_dof(c, e));
    }
    if (s == Space::ECR)
      for (int t = 0; t < map.n_tris; ++t) {
        free_of_full[map.bubble_dof(c, t)] = static_cast<int>(full_of_free.size());
        full_of_free.push_back(map.bubble_dof(c, t));
      }
  }
}

// scalar local basis data at the quadrature points of one element
struct LocalBasis {
  int n = 0;                                  // local scalar shapes (3 or 4)
  std::array<int, 4> dof;                     // full dof index per component stride 0
  Eigen::MatrixXd val;                        // n x nq
  std::vector<Eigen::MatrixXd> grad;          // per shape: 2 x nq
};

LocalBasis scalar_basis(Space s, const Triangulation& mesh, const DofMap& map, int k,
                        const ElementGeometry& g, const std::vector<Vec2>& xq) {
  const int nq = static_cast<int>(xq.size());
  LocalBasis lb;
  lb.n = (s == Space::ECR) ? 4 : 3;
  for (int i = 0; i < 3; ++i) lb.dof[i] = map.edge_dof(0, mesh.tri_edges[k][i]);
  if (s == Space::ECR) lb.dof[3] = map.bubble_dof(0, k);
  lb.val.resize(lb.n, nq);
  lb.grad.assign(lb.n, Eigen::MatrixXd(2, nq));
  if (s == Space::CR) {
    for (int q = 0; q < nq; ++q) {
      auto psi = g.barycentric(xq[q]);
      for (int i = 0; i < 3; ++i) {
        lb.val(i, q) = 1.0 - 2.0 * psi[i];
        lb.grad[i].col(q) = -2.0 * g.grad_psi[i];
      }
    }
  } else {
    Eigen::Matrix4d basis = ecr_local_basis(g);
    for (int q = 0; q < nq; ++q) {
      const Vec2 xi = xq[q] - g.centroid;
      const Eigen::Vector4d mono(1.0, xi.x(), xi.y(), xi.squaredNorm());
      Eigen::Vector4d vals = basis.transpose() * mono;
      for (int a = 0; a < 4; ++a) {
        lb.val(a, q) = vals[a];
        lb.grad[a].col(q) =
            Vec2(basis(1, a) + 2.0 * basis(3, a) * xi.x(), basis(2, a) + 2.0 * basis(3, a) * xi.y());
      }
    }
  }
  return lb;
}

std::vector<Vec2> quad_points(const ElementGeometry& g, const TriangleRule& rule) {
  std::vector<Vec2> xq(rule.points.size());
  for (std::size_t q = 0; q < rule.points.size(); ++q)
    xq[q] = rule.points[q][0] * g.vertex[0] + rule.points[q][1] * g.vertex[1] +
            rule.points[q][2] * g.vertex[2];
  return xq;
}

}  // namespace

Eigen::VectorXd expand_free(const std::vector<int>& full_of_free, int n_full,
                            const Eigen::VectorXd& reduced) {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(n_full);
  for (std::size_t i = 0; i < full_of_free.size(); ++i) full[full_of_free[i]] = reduced[i];
  return full;
}

SaddleSystem assemble_stokes(Space velocity_space, const Triangulation& mesh,
                             const PiecewiseField& f, int rhs_degree) {
  if (velocity_space != Space::CR && velocity_space != Space::ECR)
    throw std::invalid_argument("velocity space must be CR or ECR");
  if (mesh.n_triangles() == 0) throw std::invalid_argument("empty mesh");
  if (f.ncomp != 2) throw std::invalid_argument("body force must have 2 components");

  SaddleSystem s;
  s.primary_space = velocity_space;
  s.primary_map = DofMap::make(velocity_space, mesh);
  s.secondary_map = DofMap::make(Space::P0, mesh, 1);
  velocity_reduction(velocity_space, mesh, s.primary_map, s.free_of_full, s.full_of_free);

  const int n_u = static_cast<int>(s.full_of_free.size());
  const int n_p = mesh.n_triangles();
  Triplets ta, tb;
  s.rhs_u = Eigen::VectorXd::Zero(n_u);
  s.rhs_q = Eigen::VectorXd::Zero(n_p);
  s.mean_constraint = Eigen::VectorXd::Zero(n_p);

  const auto& rule = tri_rule(kAssemblyDegree);
  const auto& frule = tri_rule(rhs_degree);
  const int stride = s.primary_map.stride;
  std::vector<double> fbuf(2);

  for (int k = 0; k < mesh.n_triangles(); ++k) {
    auto g = geometry(mesh, k);
    auto xq = quad_points(g, rule);
    auto lb = scalar_basis(velocity_space, mesh, s.primary_map, k, g, xq);

    // scalar stiffness and divergence coupling
    for (int a = 0; a < lb.n; ++a) {
      const int fa = s.free_of_full[lb.dof[a]];
      for (int b = 0; b < lb.n; ++b) {
        const int fb = s.free_of_full[lb.dof[b]];
        if (fa < 0 || fb < 0) continue;
        double kab = 0.0;
        for (std::size_t q = 0; q < xq.size(); ++q)
          kab += rule.weights[q] * lb.grad[a].col(q).dot(lb.grad[b].col(q));
        kab *= g.area;
        // same scalar stiffness for each velocity component
        for (int c = 0; c < 2; ++c) {
          const int ra = s.free_of_full[lb.dof[a] + c * stride];
          const int rb = s.free_of_full[lb.dof[b] + c * stride];
          ta.emplace_back(ra, rb, kab);
        }
      }
      if (fa < 0) continue;
      // (div v, q) with q the P0 indicator of element k
      for (int c = 0; c < 2; ++c) {
        double div = 0.0;
        for (std::size_t q = 0; q < xq.size(); ++q) div += rule.weights[q] * lb.grad[a](c, q);
        div *= g.area;
        tb.emplace_back(k, s.free_of_full[lb.dof[a] + c * stride], div);
      }
    }

    // rhs (f, v)
    auto xf = quad_points(g, frule);
    auto lbf = scalar_basis(velocity_space, mesh, s.primary_map, k, g, xf);
    for (std::size_t q = 0; q < xf.size(); ++q) {
      f.eval(k, xf[q], fbuf.data());
      for (int a = 0; a < lbf.n; ++a)
        for (int c = 0; c < 2; ++c) {
          const int ra = s.free_of_full[lbf.dof[a] + c * stride];
          if (ra >= 0) s.rhs_u[ra] += g.area * frule.weights[q] * fbuf[c] * lbf.val(a, q);
        }
    }

    s.mean_constraint[k] = g.area;
  }

  s.A.resize(n_u, n_u);
  s.A.setFromTriplets(ta.begin(), ta.end());
  s.B.resize(n_p, n_u);
  s.B.setFromTriplets(tb.begin(), tb.end());
  s.mean_on_primary = false;
  return s;
}

SaddleSystem assemble_rt_mixed(const Triangulation& mesh, const PiecewiseField& f,
                               int rhs_degree) {
  if (mesh.n_triangles() == 0) throw std::invalid_argument("empty mesh");
  if (f.ncomp != 2) throw std::invalid_argument("body force must have 2 components");

  SaddleSystem s;
  s.primary_space = Space::RT;
  s.primary_map = DofMap::make(Space::RT, mesh);
  s.secondary_map = DofMap::make(Space::P0, mesh, 2);
  // no essential conditions on the tensor block
  s.free_of_full.resize(s.primary_map.n_dofs);
  s.full_of_free.resize(s.primary_map.n_dofs);
  for (int i = 0; i < s.primary_map.n_dofs; ++i) s.free_of_full[i] = s.full_of_free[i] = i;

  const int n_sig = s.primary_map.n_dofs;
  const int n_u = s.secondary_map.n_dofs;
  Triplets ta, tb;
  s.rhs_u = Eigen::VectorXd::Zero(n_sig);
  s.rhs_q = Eigen::VectorXd::Zero(n_u);
  s.mean_constraint = Eigen::VectorXd::Zero(n_sig);

  const auto& rule = tri_rule(kAssemblyDegree);
  const auto& frule = tri_rule(rhs_degree);
  std::vector<double> fbuf(2);

  for (int k = 0; k < mesh.n_triangles(); ++k) {
    auto g = geometry(mesh, k);
    auto xq = quad_points(g, rule);

    // local RT row basis chi_i = sign_i (x - p_i) / (2|K|); tensor basis is
    // e_r (x) chi_i with dev(e_r (x) chi) entering the A block
    std::array<int, 3> edof;
    for (int i = 0; i < 3; ++i) edof[i] = mesh.tri_edges[k][i];
    auto chi = [&](int i, const Vec2& x) -> Vec2 {
      return mesh.tri_edge_sign[k][i] * (x - g.vertex[i]) / (2.0 * g.area);
    };

    for (int i = 0; i < 3; ++i)
      for (int r = 0; r < 2; ++r) {
        const int row = s.primary_map.edge_dof(r, edof[i]);
        for (int j = 0; j < 3; ++j)
          for (int p = 0; p < 2; ++p) {
            const int col = s.primary_map.edge_dof(p, edof[j]);
            double a = 0.0;
            for (std::size_t q = 0; q < xq.size(); ++q) {
              Mat2 ti = Mat2::Zero(), tj = Mat2::Zero();
              ti.row(r) = chi(i, xq[q]).transpose();
              tj.row(p) = chi(j, xq[q]).transpose();
              a += rule.weights[q] * (dev(ti).array() * dev(tj).array()).sum();
            }
            ta.emplace_back(row, col, a * g.area);
          }
        // (div tau, v): the row divergence is the constant sign_i / |K|
        const double divr = mesh.tri_edge_sign[k][i] / g.area;
        tb.emplace_back(s.secondary_map.cell_dof(r, k), row, divr * g.area);
        // trace integral for the zero-mean constraint
        double tr = 0.0;
        for (std::size_t q = 0; q < xq.size(); ++q) tr += rule.weights[q] * chi(i, xq[q])(r);
        s.mean_constraint[row] += tr * g.area;
      }

    // rhs of the second equation: -(f, v) for P0 velocities
    auto xf = quad_points(g, frule);
    for (std::size_t q = 0; q < xf.size(); ++q) {
      f.eval(k, xf[q], fbuf.data());
      for (int c = 0; c < 2; ++c)
        s.rhs_q[s.secondary_map.cell_dof(c, k)] -= g.area * frule.weights[q] * fbuf[c];
    }
  }

  s.A.resize(n_sig, n_sig);
  s.A.setFromTriplets(ta.begin(), ta.end());
  s.B.resize(n_u, n_sig);
  s.B.setFromTriplets(tb.begin(), tb.end());
  s.mean_on_primary = true;
  return s;
}

MassMatrix assemble_mass(Space velocity_space, const Triangulation& mesh) {
  if (velocity_space != Space::CR && velocity_space != Space::ECR)
    throw std::invalid_argument("velocity space must be CR or ECR");
  MassMatrix mm;
  mm.map = DofMap::make(velocity_space, mesh);
  velocity_reduction(velocity_space, mesh, mm.map, mm.free_of_full, mm.full_of_free);
  const int n_u = static_cast<int>(mm.full_of_free.size());
  const int stride = mm.map.stride;
  Triplets tm;
  const auto& rule = tri_rule(kAssemblyDegree);
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    auto g = geometry(mesh, k);
    auto xq = quad_points(g, rule);
    auto lb = scalar_basis(velocity_space, mesh, mm.map, k, g, xq);
    for (int a = 0; a < lb.n; ++a)
      for (int b = 0; b < lb.n; ++b) {
        double m = 0.0;
        for (std::size_t q = 0; q < xq.size(); ++q)
          m += rule.weights[q] * lb.val(a, q) * lb.val(b, q);
        m *= g.area;
        for (int c = 0; c < 2; ++c) {
          const int ra = mm.free_of_full[lb.dof[a] + c * stride];
          const int rb = mm.free_of_full[lb.dof[b] + c * stride];
          if (ra >= 0 && rb >= 0) tm.emplace_back(ra, rb, m);
        }
      }
  }
  mm.M.resize(n_u, n_u);
  mm.M.setFromTriplets(tm.begin(), tm.end());
  return mm;
}

}  // namespace stokeslab
