#pragma once

#include <array>
#include <functional>

#include "stokeslab/types.hpp"

namespace stokeslab {

/// Analytic scalar field with optional derivatives. Operations that need a
/// missing derivative throw.
struct ScalarField {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> grad;
  std::function<Mat2(const Vec2&)> hess;
};

/// Analytic vector field; jacobian(i,j) = d u_i / d x_j, hessian[i] is the
/// Hessian of component i.
struct VectorField {
  std::function<Vec2(const Vec2&)> value;
  std::function<Mat2(const Vec2&)> jacobian;
  std::function<std::array<Mat2, 2>(const Vec2&)> hessian;
};

/// Analytic 2x2 tensor field; partial[d](i,j) = d sigma_ij / d x_d.
struct TensorField {
  std::function<Mat2(const Vec2&)> value;
  std::function<std::array<Mat2, 2>(const Vec2&)> partial;
};

/// Element-wise defined field with `ncomp` components (tensors row-major).
/// Element data is evaluable anywhere in the closure of its own element.
struct PiecewiseField {
  int ncomp = 0;
  std::function<void(int elem, const Vec2& x, double* out)> eval;
};

PiecewiseField to_piecewise(const ScalarField& f);
PiecewiseField to_piecewise(const VectorField& f);
PiecewiseField to_piecewise(const TensorField& f);
PiecewiseField jacobian_piecewise(const VectorField& f);  // 4 components, row-major

/// Manufactured Stokes solution bundle: velocity, pressure, the matching body
/// force f = -div(grad u) - grad p, and the pseudostress grad u + p I.
struct StokesExact {
  VectorField velocity;
  ScalarField pressure;
  VectorField body_force;     // value only
  TensorField pseudostress;   // value + first partials
};

/// Velocity from the stream function sin^2(pi x) sin^2(pi y) exp(x + 2y) with
/// pressure cos(pi x) sin(pi y).
const StokesExact& example1();

}  // namespace stokeslab
