#include "stokeslab/expansion.hpp"

#include <stdexcept>

#include "stokeslab/quadrature.hpp"

namespace stokeslab {

Mat2 phi_rt(int i, const Vec2& centroid, const Vec2& x) {
  if (i < 1 || i > 8) throw std::invalid_argument("phi_rt index must be in 1..8");
  const double xi = x.x() - centroid.x();
  const double eta = x.y() - centroid.y();
  const int row = (i - 1) % 2;
  Vec2 v;
  switch ((i - 1) / 2) {
    case 0: v = Vec2(eta, xi); break;
    case 1: v = Vec2(eta, -xi); break;
    case 2: v = Vec2(xi, -eta); break;
    default: v = Vec2(xi, eta); break;
  }
  Mat2 t = Mat2::Zero();
  t.row(row) = v.transpose();
  return t;
}

double apply_D(int i, const std::array<Mat2, 2>& p) {
  if (i < 1 || i > 8) throw std::invalid_argument("differential index must be in 1..8");
  const int r = (i - 1) % 2;
  switch ((i - 1) / 2) {
    case 0: return 0.5 * (p[1](r, 0) + p[0](r, 1));
    case 1: return 0.5 * (p[1](r, 0) - p[0](r, 1));
    case 2: return 0.5 * (p[0](r, 0) - p[1](r, 1));
    default: return 0.5 * (p[0](r, 0) + p[1](r, 1));
  }
}

double phi_cr(int i, const ElementGeometry& g, const Vec2& x) {
  if (i < 1 || i > 3) throw std::invalid_argument("phi_cr index must be in 1..3");
  auto psi = g.barycentric(x);
  const int i0 = i - 1;
  return (2.0 * psi[(i0 + 2) % 3] - 1.0) * (2.0 * psi[(i0 + 1) % 3] - 1.0) -
         (2.0 / 3.0) * psi[i0] + 1.0 / 3.0;
}

namespace {

// RT interpolant of the linear tensor phi_rt^i on one element; exact via the
// midpoint rule on each edge
struct LocalRt {
  std::array<Vec2, 3> moment;  // per edge: (1/(2|K|)) int_e phi n ds
};

LocalRt rt_of_phi(int i, const ElementGeometry& g) {
  LocalRt r;
  for (int j = 0; j < 3; ++j)
    r.moment[j] = g.edge_length[j] / (2.0 * g.area) *
                  (phi_rt(i, g.centroid, g.midpoint[j]) * g.normal[j]);
  return r;
}

Mat2 eval_rt(const LocalRt& r, const ElementGeometry& g, const Vec2& x) {
  Mat2 t = Mat2::Zero();
  for (int j = 0; j < 3; ++j) t += outer(r.moment[j], x - g.vertex[j]);
  return t;
}

struct ElementConstants {
  Eigen::Matrix<double, 8, 8> gamma, eta;
  std::array<double, 3> zeta;
};

ElementConstants element_constants(const ElementGeometry& g, double h) {
  ElementConstants out;
  const auto& rule = tri_rule(4);

  std::array<LocalRt, 8> rt;
  std::array<Mat2, 8> rt_mean;
  std::array<double, 8> half_tr_mean;
  for (int i = 0; i < 8; ++i) {
    rt[i] = rt_of_phi(i + 1, g);
    rt_mean[i] = eval_rt(rt[i], g, g.centroid);  // linear -> mean = centroid value
    half_tr_mean[i] = 0.5 * trace2(rt_mean[i]);
  }

  Eigen::Matrix<double, 8, 8> acc_g = Eigen::Matrix<double, 8, 8>::Zero();
  Eigen::Matrix<double, 8, 8> acc_e = Eigen::Matrix<double, 8, 8>::Zero();
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const Vec2 x = rule.points[q][0] * g.vertex[0] + rule.points[q][1] * g.vertex[1] +
                   rule.points[q][2] * g.vertex[2];
    std::array<Mat2, 8> ecr_err, cr_err;
    for (int i = 0; i < 8; ++i) {
      const Mat2 phi = phi_rt(i + 1, g.centroid, x);
      cr_err[i] = dev(phi) - dev(rt_mean[i]);
      ecr_err[i] = dev(phi) - (eval_rt(rt[i], g, x) - half_tr_mean[i] * Mat2::Identity());
    }
    for (int i = 0; i < 8; ++i)
      for (int j = i; j < 8; ++j) {
        acc_g(i, j) += rule.weights[q] * (cr_err[i].array() * cr_err[j].array()).sum();
        acc_e(i, j) += rule.weights[q] * (ecr_err[i].array() * ecr_err[j].array()).sum();
      }
  }
  const double scale = 1.0 / (h * h);  // the |K| factors of the integral and the norm cancel
  for (int i = 0; i < 8; ++i)
    for (int j = i; j < 8; ++j) {
      out.gamma(i, j) = out.gamma(j, i) = acc_g(i, j) * scale;
      out.eta(i, j) = out.eta(j, i) = acc_e(i, j) * scale;
    }

  const auto& zrule = tri_rule(2);
  for (int i = 0; i < 3; ++i) {
    double integral = 0.0;
    for (std::size_t q = 0; q < zrule.points.size(); ++q) {
      const Vec2 x = zrule.points[q][0] * g.vertex[0] + zrule.points[q][1] * g.vertex[1] +
                     zrule.points[q][2] * g.vertex[2];
      integral += zrule.weights[q] * phi_cr(i + 1, g, x);
    }
    integral *= g.area;
    out.zeta[i] = g.edge_length[i] * g.edge_length[i] / (h * h * g.area) * integral;
  }
  return out;
}

}  // namespace

ExpansionConstants compute_constants(const Triangulation& mesh) {
  const int nt = mesh.n_triangles();
  std::vector<int> sample = {0};
  if (nt > 1) sample.push_back(1);
  if (nt > 3) sample.push_back(nt / 2);
  if (nt > 2) sample.push_back(nt - 1);

  ElementConstants ref = element_constants(geometry(mesh, sample[0]), mesh.h);
  for (std::size_t s = 1; s < sample.size(); ++s) {
    ElementConstants other = element_constants(geometry(mesh, sample[s]), mesh.h);
    const double dg = (ref.gamma - other.gamma).cwiseAbs().maxCoeff();
    const double de = (ref.eta - other.eta).cwiseAbs().maxCoeff();
    double dz = 0.0;
    for (int i = 0; i < 3; ++i) dz = std::max(dz, std::abs(ref.zeta[i] - other.zeta[i]));
    if (dg > 1e-12 || de > 1e-12 || dz > 1e-12)
      throw std::runtime_error("expansion constants differ across elements; mesh is not uniform");
  }
  return {ref.gamma, ref.eta, ref.zeta, mesh.h};
}

namespace {

double eval_gram(const TensorField& sigma, const Triangulation& mesh,
                 const Eigen::Matrix<double, 8, 8>& weights) {
  if (!sigma.partial) throw std::invalid_argument("tensor field needs first partials");
  const auto& rule = tri_rule(6);
  double total = 0.0;
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    auto g = geometry(mesh, k);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Vec2 x = rule.points[q][0] * g.vertex[0] + rule.points[q][1] * g.vertex[1] +
                     rule.points[q][2] * g.vertex[2];
      auto p = sigma.partial(x);
      Eigen::Matrix<double, 8, 1> d;
      for (int i = 0; i < 8; ++i) d[i] = apply_D(i + 1, p);
      local += rule.weights[q] * d.dot(weights * d);
    }
    total += local * g.area;
  }
  return total;
}

}  // namespace

double eval_F1(const TensorField& sigma, const Triangulation& mesh, const ExpansionConstants& c) {
  return eval_gram(sigma, mesh, c.gamma);
}

double eval_F2(const TensorField& sigma, const Triangulation& mesh, const ExpansionConstants& c) {
  return eval_gram(sigma, mesh, c.eta);
}

double eval_F3(const VectorField& u, const Triangulation& mesh, const ExpansionConstants& c) {
  if (!u.value || !u.hessian) throw std::invalid_argument("vector field needs value and Hessians");
  const auto& rule = tri_rule(6);
  double total = 0.0;
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    auto g = geometry(mesh, k);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Vec2 x = rule.points[q][0] * g.vertex[0] + rule.points[q][1] * g.vertex[1] +
                     rule.points[q][2] * g.vertex[2];
      const Vec2 val = u.value(x);
      const auto hess = u.hessian(x);
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        const Vec2 t = g.tangent[i];
        const Vec2 dtt(t.dot(hess[0] * t), t.dot(hess[1] * t));
        s += c.zeta[i] * dtt.dot(val);
      }
      local += rule.weights[q] * s;
    }
    total += local * g.area;
  }
  // sign fixed by the exact quadratic identity (interpolation error against
  // the element mean); see the expansion tests
  return -total / 8.0;
}

}  // namespace stokeslab
