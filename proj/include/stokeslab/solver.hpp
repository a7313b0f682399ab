#pragma once

#include "stokeslab/assembly.hpp"

namespace stokeslab {

/// Solution of a source problem; fields carry full-length coefficient vectors
/// (eliminated boundary dofs are zero).
struct SourceSolution {
  DiscreteField primary;    // velocity (CR/ECR) or pseudostress (RT)
  DiscreteField secondary;  // pressure (CR/ECR) or cell velocity (RT)
  double residual = 0.0;
};

SourceSolution solve_source(const SaddleSystem& sys);

struct EigenPair {
  double lambda = 0.0;
  DiscreteField velocity;  // full-length, unit mass norm
  DiscreteField pressure;
  double residual = 0.0;
};

struct EigOptions {
  double shift = 1.0;
  double tol = 1e-10;
  int max_iter = 500;
  int extra = 5;  // subspace buffer beyond k
};

/// k smallest eigenvalues of the constrained pencil; the multiplier block
/// carries no mass, so shift-invert never sees the infinite modes.
std::vector<EigenPair> solve_eigs(const SaddleSystem& sys, const MassMatrix& mass, int k,
                                  const EigOptions& opt = {});

/// Unit mass norm and deterministic sign (first coefficient of largest
/// magnitude made positive).
void normalize(EigenPair& pair, const MassMatrix& mass);

}  // namespace stokeslab
