#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "stokeslab/fields.hpp"
#include "stokeslab/mesh.hpp"

namespace stokeslab {

/// CR: vector-valued nonconforming P1 with edge-mean dofs.
/// ECR: CR enriched per element with the bubble x1^2 + x2^2 (element-mean dof).
/// P0: piecewise constants (1 or 2 components).
/// RT: lowest-order Raviart-Thomas used row-wise for 2x2 tensors; one dof per
///     edge and tensor row, storing the total flux through the canonical edge
///     normal (normal-trace continuity holds by construction).
enum class Space { CR, ECR, P0, RT };

struct DofMap {
  Space space = Space::CR;
  int n_edges = 0, n_tris = 0;
  int n_comp = 0;   // vector components (CR/ECR), tensor rows (RT)
  int stride = 0;   // per-component stride
  int n_dofs = 0;

  static DofMap make(Space s, const Triangulation& mesh, int p0_comp = 1);

  int edge_dof(int c, int e) const { return c * stride + e; }
  int bubble_dof(int c, int t) const { return c * stride + n_edges + t; }  // ECR only
  int cell_dof(int c, int t) const { return c * stride + t; }              // P0
};

struct DiscreteField {
  DofMap map;
  Eigen::VectorXd coeffs;
};

// canonical interpolation operators
DiscreteField interpolate_cr(const Triangulation& mesh, const VectorField& v);
DiscreteField interpolate_ecr(const Triangulation& mesh, const VectorField& v);
DiscreteField interpolate_rt(const Triangulation& mesh, const TensorField& tau);

// element-wise L2 projection onto piecewise constants
DiscreteField project_p0(const Triangulation& mesh, const ScalarField& f, int degree = 8);
DiscreteField project_p0(const Triangulation& mesh, const PiecewiseField& f, int degree = 2);

/// Element means of an arbitrary piecewise field, one row per element.
Eigen::MatrixXd cell_means(const Triangulation& mesh, const PiecewiseField& f, int degree);
PiecewiseField piecewise_constant(const Triangulation& mesh, Eigen::MatrixXd data);

// point evaluation adapters
PiecewiseField value_field(const Triangulation& mesh, const DiscreteField& u);
PiecewiseField gradient_field(const Triangulation& mesh, const DiscreteField& u);  // CR/ECR

/// Local scalar shape functions dual to the element dofs (CR: 3 edge shapes,
/// ECR: 3 edge shapes + bubble, P0: 1). With `checked`, x must lie in the
/// element.
std::vector<double> eval_local_scalar(Space s, const Triangulation& mesh, int k, const Vec2& x,
                                      bool checked = false);
/// Local RT row basis (per edge, unit canonical-normal total flux).
std::vector<Vec2> eval_local_rt(const Triangulation& mesh, int k, const Vec2& x,
                                bool checked = false);

std::shared_ptr<const std::vector<ElementGeometry>> all_geometry(const Triangulation& mesh);

/// Dual basis of the ECR element dofs (three edge means and the element mean)
/// in centered monomials {1, x1-M1, x2-M2, |x-M|^2}; column a holds the
/// monomial coefficients of shape function a.
Eigen::Matrix4d ecr_local_basis(const ElementGeometry& g);

}  // namespace stokeslab
