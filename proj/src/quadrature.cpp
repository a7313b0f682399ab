#include "stokeslab/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace stokeslab {

namespace {

struct Gauss {
  std::vector<double> x;  // on [0,1]
  std::vector<double> w;
};

// Golub-Welsch from the symmetric Jacobi matrix of the recurrence.
Gauss golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = diag(i);
    if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = off(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Gauss g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < n; ++i) {
    g.x[i] = 0.5 * (es.eigenvalues()(i) + 1.0);  // map [-1,1] -> [0,1]
    g.w[i] = mu0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
  return g;
}

// Gauss-Legendre on [0,1], weights sum to 1; exact to degree 2n-1.
Gauss gauss_legendre(int n) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n), o(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) o(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  auto g = golub_welsch(d, o, 2.0);
  for (auto& w : g.w) w *= 0.5;
  return g;
}

// Gauss-Jacobi with weight (1-t) on [0,1], weights sum to 1/2.
Gauss gauss_jacobi10(int n) {
  Eigen::VectorXd d(n), o(std::max(n - 1, 0));
  d(0) = -1.0 / 3.0;
  for (int k = 1; k < n; ++k) {
    d(k) = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
    o(k - 1) = std::sqrt(k * (k + 1.0)) / (2.0 * k + 1.0);
  }
  auto g = golub_welsch(d, o, 2.0);
  for (auto& w : g.w) w *= 0.25;
  return g;
}

// Conical product rule: exact for total degree 2n-1 on the triangle.
TriangleRule conical(int degree) {
  const int n = degree / 2 + 1;
  const Gauss gu = gauss_legendre(n);
  const Gauss gv = gauss_jacobi10(n);
  TriangleRule r;
  r.degree = degree;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = gu.x[i] * (1.0 - gv.x[j]);
      const double y = gv.x[j];
      r.points.push_back({1.0 - x - y, x, y});
      r.weights.push_back(2.0 * gu.w[i] * gv.w[j]);  // reference area 1/2 -> sum 1
    }
  return r;
}

}  // namespace

const TriangleRule& tri_rule(int degree) {
  if (degree < 1 || degree > 10) throw std::invalid_argument("triangle rule degree must be in 1..10");
  static const auto rules = [] {
    std::vector<TriangleRule> r;
    for (int d = 1; d <= 10; ++d) r.push_back(conical(d));
    return r;
  }();
  return rules[degree - 1];
}

const EdgeRule& edge_rule(int degree) {
  if (degree < 1 || degree > 19) throw std::invalid_argument("edge rule degree must be in 1..19");
  static const auto rules = [] {
    std::vector<EdgeRule> r;
    for (int d = 1; d <= 19; ++d) {
      auto g = gauss_legendre(d / 2 + 1);
      r.push_back({d, g.x, g.w});
    }
    return r;
  }();
  return rules[degree - 1];
}

}  // namespace stokeslab
