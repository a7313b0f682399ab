#include "stokeslab/solver.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace stokeslab {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplets = std::vector<Eigen::Triplet<double>>;

// bordered operator [[A - shift*M, B^T, .],[B, 0, .],[., ., 0]] with the
// zero-mean column attached to the block the constraint acts on
SpMat bordered(const SaddleSystem& sys, const SpMat* mass, double shift) {
  const int n1 = sys.n_primary(), n2 = sys.n_secondary();
  const int n = n1 + n2 + 1;
  Triplets t;
  t.reserve(sys.A.nonZeros() + 2 * sys.B.nonZeros() + 2 * sys.mean_constraint.size() +
            (mass ? mass->nonZeros() : 0));
  for (int o = 0; o < sys.A.outerSize(); ++o)
    for (SpMat::InnerIterator it(sys.A, o); it; ++it)
      t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  if (mass && shift != 0.0)
    for (int o = 0; o < mass->outerSize(); ++o)
      for (SpMat::InnerIterator it(*mass, o); it; ++it)
        t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                       -shift * it.value());
  for (int o = 0; o < sys.B.outerSize(); ++o)
    for (SpMat::InnerIterator it(sys.B, o); it; ++it) {
      t.emplace_back(n1 + static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
      t.emplace_back(static_cast<int>(it.col()), n1 + static_cast<int>(it.row()), it.value());
    }
  const int off = sys.mean_on_primary ? 0 : n1;
  for (int i = 0; i < sys.mean_constraint.size(); ++i) {
    const double v = sys.mean_constraint[i];
    if (v == 0.0) continue;
    t.emplace_back(off + i, n - 1, v);
    t.emplace_back(n - 1, off + i, v);
  }
  SpMat K(n, n);
  K.setFromTriplets(t.begin(), t.end());
  return K;
}

Eigen::VectorXd stack_rhs(const SaddleSystem& sys) {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(sys.n_primary() + sys.n_secondary() + 1);
  rhs.head(sys.n_primary()) = sys.rhs_u;
  rhs.segment(sys.n_primary(), sys.n_secondary()) = sys.rhs_q;
  return rhs;
}

DiscreteField expand_field(const DofMap& map, const std::vector<int>& full_of_free,
                           const Eigen::VectorXd& reduced) {
  DiscreteField f{map, expand_free(full_of_free, map.n_dofs, reduced)};
  return f;
}

}  // namespace

SourceSolution solve_source(const SaddleSystem& sys) {
  SpMat K = bordered(sys, nullptr, 0.0);
  Eigen::SparseLU<SpMat> lu(K);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error(
        "saddle factorization failed; check the zero-mean constraint and boundary reduction");
  Eigen::VectorXd rhs = stack_rhs(sys);
  Eigen::VectorXd x = lu.solve(rhs);

  SourceSolution sol;
  const double scale = std::max(1.0, rhs.norm());
  sol.residual = (K * x - rhs).norm() / scale;
  sol.primary = expand_field(sys.primary_map, sys.full_of_free, x.head(sys.n_primary()));
  sol.secondary = DiscreteField{sys.secondary_map,
                                x.segment(sys.n_primary(), sys.n_secondary())};
  return sol;
}

std::vector<EigenPair> solve_eigs(const SaddleSystem& sys, const MassMatrix& mass, int k,
                                  const EigOptions& opt) {
  const int n_u = sys.n_primary(), n_p = sys.n_secondary();
  const int dim_z = n_u - (n_p - 1);  // discrete divergence-free dimension
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > dim_z) throw std::invalid_argument("k exceeds the divergence-free space dimension");
  if (mass.M.rows() != n_u) throw std::invalid_argument("mass matrix does not match the system");

  SpMat S = bordered(sys, &mass.M, opt.shift);
  Eigen::SparseLU<SpMat> lu(S);
  if (lu.info() != Eigen::Success) throw std::runtime_error("shifted factorization failed");

  const int m = std::min(k + opt.extra, dim_z);
  Eigen::MatrixXd X(n_u, m);
  X.col(0).setOnes();
  std::mt19937 gen(20240501u);
  for (int j = 1; j < m; ++j)
    for (int i = 0; i < n_u; ++i)
      X(i, j) = 2.0 * (static_cast<double>(gen()) / 4294967296.0) - 1.0;

  const int n = n_u + n_p + 1;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd P;  // recovered multiplier blocks of the final solves
  double max_res = std::numeric_limits<double>::infinity();

  auto apply = [&](const Eigen::MatrixXd& V) {
    Eigen::MatrixXd Y(n_u, V.cols());
    Eigen::MatrixXd Q(n_p, V.cols());
    for (int j = 0; j < V.cols(); ++j) {
      rhs.head(n_u) = mass.M * V.col(j);
      Eigen::VectorXd x = lu.solve(rhs);
      Y.col(j) = x.head(n_u);
      Q.col(j) = x.segment(n_u, n_p);
    }
    return std::make_pair(Y, Q);
  };

  int it = 0;
  for (; it < opt.max_iter; ++it) {
    auto [Y, Q] = apply(X);
    Eigen::MatrixXd ga = Y.transpose() * (sys.A * Y).eval();
    Eigen::MatrixXd gm = Y.transpose() * (mass.M * Y).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(ga, gm);
    if (ges.info() != Eigen::Success) throw std::runtime_error("dense Ritz step failed");
    X = Y * ges.eigenvectors();
    theta = ges.eigenvalues();

    // residual of the first k Ritz pairs; pressures from one extra solve
    auto [Z, ZQ] = apply(X.leftCols(k));
    max_res = 0.0;
    P.resize(n_p, k);
    for (int j = 0; j < k; ++j) {
      P.col(j) = (theta[j] - opt.shift) * ZQ.col(j);
      Eigen::VectorXd lam_mu = theta[j] * (mass.M * X.col(j));
      Eigen::VectorXd res =
          sys.A * X.col(j) + sys.B.transpose() * P.col(j) - lam_mu;
      max_res = std::max(max_res, res.norm() / lam_mu.norm());
    }
    if (max_res <= opt.tol) break;
  }
  if (max_res > opt.tol) {
    std::ostringstream os;
    os << "eigensolver did not reach tol " << opt.tol << " in " << opt.max_iter
       << " iterations; attained residual " << max_res;
    throw std::runtime_error(os.str());
  }

  std::vector<EigenPair> pairs(k);
  for (int j = 0; j < k; ++j) {
    pairs[j].lambda = theta[j];
    pairs[j].velocity = expand_field(sys.primary_map, sys.full_of_free, X.col(j));
    pairs[j].pressure = DiscreteField{sys.secondary_map, P.col(j)};
    Eigen::VectorXd lam_mu = theta[j] * (mass.M * X.col(j));
    pairs[j].residual =
        (sys.A * X.col(j) + sys.B.transpose() * P.col(j) - lam_mu).norm() / lam_mu.norm();
    normalize(pairs[j], mass);
  }
  return pairs;
}

void normalize(EigenPair& pair, const MassMatrix& mass) {
  Eigen::VectorXd reduced(mass.full_of_free.size());
  for (std::size_t i = 0; i < mass.full_of_free.size(); ++i)
    reduced[i] = pair.velocity.coeffs[mass.full_of_free[i]];
  const double norm = std::sqrt(reduced.dot(mass.M * reduced));
  if (!(norm > 0.0)) throw std::invalid_argument("cannot normalize a zero eigenvector");

  int imax = 0;
  for (int i = 1; i < pair.velocity.coeffs.size(); ++i)
    if (std::abs(pair.velocity.coeffs[i]) > std::abs(pair.velocity.coeffs[imax])) imax = i;
  const double s = (pair.velocity.coeffs[imax] < 0.0 ? -1.0 : 1.0) / norm;
  pair.velocity.coeffs *= s;
  pair.pressure.coeffs *= s;
}

}  // namespace stokeslab
