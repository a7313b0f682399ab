#pragma once

#include <optional>

#include "stokeslab/solver.hpp"

namespace stokeslab {

/// Nonconforming-P1 field given by one value per edge midpoint and component.
struct MidpointField {
  int ncomp = 0;
  Eigen::MatrixXd values;  // n_edges x ncomp
};

/// Midpoint-averaging lift: interior midpoints get the two-sided average,
/// boundary midpoints the linear extension 2*q(m') - q(m'') through the
/// companion midpoints. Needs level >= 2; fails loudly if a companion
/// midpoint is itself on the boundary.
MidpointField midpoint_lift(const Triangulation& mesh, const PiecewiseField& q);

/// Evaluate a MidpointField element-wise through the CR edge basis.
PiecewiseField lifted_eval(const Triangulation& mesh, const MidpointField& f);

// pseudostress interpolations
DiscreteField interp_pressure(const Triangulation& mesh, const TensorField& sigma);     // P0
PiecewiseField interp_velocity_cr(const Triangulation& mesh, const TensorField& sigma);  // P0 tensor
PiecewiseField interp_velocity_ecr(const Triangulation& mesh, const TensorField& sigma); // P1 tensor

/// Postprocessed pseudostress, velocity gradient and pressure. The
/// pseudostress needs the RT solution; the other two need the nonconforming
/// one. Fields not derivable from the supplied solutions stay empty.
struct RecoveredFields {
  std::optional<MidpointField> sigma;     // lift of the P0-projected RT pseudostress
  std::optional<MidpointField> grad_u;    // lift of the broken velocity gradient
  std::optional<MidpointField> pressure;  // lift of the discrete pressure
};

RecoveredFields recover_all(const Triangulation& mesh, Space method,
                            const SourceSolution* nonconforming, const SourceSolution* rt);

}  // namespace stokeslab
