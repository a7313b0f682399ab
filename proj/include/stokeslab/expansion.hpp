#pragma once

#include "stokeslab/fields.hpp"
#include "stokeslab/mesh.hpp"

namespace stokeslab {

/// Element-invariant coefficients of the h^2 eigenvalue expansion on uniform
/// triangulations: gamma/eta are Gram matrices of the pseudostress
/// interpolation errors of the eight linear tensor modes, zeta the quadratic
/// bubble moments per local edge.
struct ExpansionConstants {
  Eigen::Matrix<double, 8, 8> gamma;
  Eigen::Matrix<double, 8, 8> eta;
  std::array<double, 3> zeta;
  double h = 0.0;
};

/// The eight centroid-centered linear tensor modes; index 1..8.
Mat2 phi_rt(int i, const Vec2& centroid, const Vec2& x);

/// The eight first-order differential combinations dual to phi_rt
/// (D_j phi_rt^i = delta_ij); sigma supplied through its partials.
double apply_D(int i, const std::array<Mat2, 2>& partials);

/// Edge-bubble quadratics with unit value at the own-edge midpoint minus 2/3;
/// index 1..3 matches the local edge numbering.
double phi_cr(int i, const ElementGeometry& g, const Vec2& x);

/// Constants are computed per element and verified to agree across sampled
/// elements; throws if the triangulation is not uniform.
ExpansionConstants compute_constants(const Triangulation& mesh);

// F1/F2: weighted Gram sums of D_i sigma; F3: bubble-weighted second
// tangential derivatives against the field itself
double eval_F1(const TensorField& sigma, const Triangulation& mesh, const ExpansionConstants& c);
double eval_F2(const TensorField& sigma, const Triangulation& mesh, const ExpansionConstants& c);
double eval_F3(const VectorField& u, const Triangulation& mesh, const ExpansionConstants& c);

/// Richardson step cancelling the h^2 error term.
inline double extrapolate(double lambda_h, double lambda_2h) {
  return (4.0 * lambda_h - lambda_2h) / 3.0;
}

}  // namespace stokeslab
