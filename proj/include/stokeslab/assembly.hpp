#pragma once

#include <Eigen/Sparse>

#include "stokeslab/spaces.hpp"

namespace stokeslab {

/// Sparse saddle-point system
///   [ A  B^T ] [u]   [rhs_u]
///   [ B   0  ] [q] = [rhs_q]
/// plus one Lagrange multiplier row enforcing the zero-mean constraint on the
/// primary block (RT trace) or the secondary block (pressure).
///
/// For the nonconforming Stokes systems the primary block is the velocity with
/// boundary-edge dofs eliminated; `full_of_free` / `free_of_full` map between
/// the reduced and the full dof numbering (boundary dofs are zero).
struct SaddleSystem {
  Space primary_space = Space::CR;
  Eigen::SparseMatrix<double> A;  // n_u x n_u, symmetric
  Eigen::SparseMatrix<double> B;  // n_q x n_u
  Eigen::VectorXd mean_constraint;
  bool mean_on_primary = false;
  Eigen::VectorXd rhs_u, rhs_q;
  DofMap primary_map, secondary_map;  // full maps
  std::vector<int> free_of_full;      // -1 for eliminated dofs
  std::vector<int> full_of_free;

  int n_primary() const { return static_cast<int>(A.rows()); }
  int n_secondary() const { return static_cast<int>(B.rows()); }
};

/// Velocity mass operator on the same reduced numbering as the matching
/// SaddleSystem.
struct MassMatrix {
  Eigen::SparseMatrix<double> M;
  DofMap map;  // full map
  std::vector<int> free_of_full;
  std::vector<int> full_of_free;
};

SaddleSystem assemble_stokes(Space velocity_space, const Triangulation& mesh,
                             const PiecewiseField& f, int rhs_degree = 6);
SaddleSystem assemble_rt_mixed(const Triangulation& mesh, const PiecewiseField& f,
                               int rhs_degree = 6);
MassMatrix assemble_mass(Space velocity_space, const Triangulation& mesh);

/// Expand a reduced coefficient vector to the full dof numbering.
Eigen::VectorXd expand_free(const std::vector<int>& full_of_free, int n_full,
                            const Eigen::VectorXd& reduced);

}  // namespace stokeslab
