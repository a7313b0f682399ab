#include "stokeslab/fields.hpp"

#include <cmath>

namespace stokeslab {

PiecewiseField to_piecewise(const ScalarField& f) {
  return {1, [fn = f.value](int, const Vec2& x, double* out) { out[0] = fn(x); }};
}

PiecewiseField to_piecewise(const VectorField& f) {
  return {2, [fn = f.value](int, const Vec2& x, double* out) {
            Vec2 v = fn(x);
            out[0] = v.x();
            out[1] = v.y();
          }};
}

PiecewiseField to_piecewise(const TensorField& f) {
  return {4, [fn = f.value](int, const Vec2& x, double* out) {
            Mat2 t = fn(x);
            out[0] = t(0, 0);
            out[1] = t(0, 1);
            out[2] = t(1, 0);
            out[3] = t(1, 1);
          }};
}

PiecewiseField jacobian_piecewise(const VectorField& f) {
  return {4, [fn = f.jacobian](int, const Vec2& x, double* out) {
            Mat2 t = fn(x);
            out[0] = t(0, 0);
            out[1] = t(0, 1);
            out[2] = t(1, 0);
            out[3] = t(1, 1);
          }};
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// derivatives 0..4 of sin^2(pi s) = (1 - cos(2 pi s)) / 2
inline void sin2_derivs(double s, double d[5]) {
  const double c = std::cos(2 * kPi * s), sn = std::sin(2 * kPi * s);
  d[0] = 0.5 * (1 - c);
  d[1] = kPi * sn;
  d[2] = 2 * kPi * kPi * c;
  d[3] = -4 * kPi * kPi * kPi * sn;
  d[4] = -8 * kPi * kPi * kPi * kPi * c;
}

// A(x) = sin^2(pi x) e^x and derivatives 0..3 (Leibniz)
inline void stream_x(double x, double a[4]) {
  double s[5];
  sin2_derivs(x, s);
  const double e = std::exp(x);
  a[0] = s[0] * e;
  a[1] = (s[1] + s[0]) * e;
  a[2] = (s[2] + 2 * s[1] + s[0]) * e;
  a[3] = (s[3] + 3 * s[2] + 3 * s[1] + s[0]) * e;
}

// B(y) = sin^2(pi y) e^{2y} and derivatives 0..3
inline void stream_y(double y, double b[4]) {
  double s[5];
  sin2_derivs(y, s);
  const double e = std::exp(2 * y);
  b[0] = s[0] * e;
  b[1] = (s[1] + 2 * s[0]) * e;
  b[2] = (s[2] + 4 * s[1] + 4 * s[0]) * e;
  b[3] = (s[3] + 6 * s[2] + 12 * s[1] + 8 * s[0]) * e;
}

// u = (-d(AB)/dy, d(AB)/dx): partial^{(i,j)} u1 = -A^(i) B^(j+1),
// partial^{(i,j)} u2 = A^(i+1) B^(j).
struct Example1Impl {
  static void partials(const Vec2& p, double a[4], double b[4]) {
    stream_x(p.x(), a);
    stream_y(p.y(), b);
  }

  static Vec2 u(const Vec2& p) {
    double a[4], b[4];
    partials(p, a, b);
    return {-a[0] * b[1], a[1] * b[0]};
  }

  static Mat2 jac(const Vec2& p) {
    double a[4], b[4];
    partials(p, a, b);
    Mat2 j;
    j << -a[1] * b[1], -a[0] * b[2], a[2] * b[0], a[1] * b[1];
    return j;
  }

  static std::array<Mat2, 2> hess(const Vec2& p) {
    double a[4], b[4];
    partials(p, a, b);
    Mat2 h1, h2;
    h1 << -a[2] * b[1], -a[1] * b[2], -a[1] * b[2], -a[0] * b[3];
    h2 << a[3] * b[0], a[2] * b[1], a[2] * b[1], a[1] * b[2];
    return {h1, h2};
  }

  static double pr(const Vec2& p) { return std::cos(kPi * p.x()) * std::sin(kPi * p.y()); }

  static Vec2 pr_grad(const Vec2& p) {
    return {-kPi * std::sin(kPi * p.x()) * std::sin(kPi * p.y()),
            kPi * std::cos(kPi * p.x()) * std::cos(kPi * p.y())};
  }

  static Mat2 pr_hess(const Vec2& p) {
    const double k2 = kPi * kPi;
    Mat2 h;
    h << -k2 * pr(p), -k2 * std::sin(kPi * p.x()) * std::cos(kPi * p.y()),
        -k2 * std::sin(kPi * p.x()) * std::cos(kPi * p.y()), -k2 * pr(p);
    return h;
  }
};

}  // namespace

const StokesExact& example1() {
  static const StokesExact ex = [] {
    StokesExact s;
    s.velocity = {Example1Impl::u, Example1Impl::jac, Example1Impl::hess};
    s.pressure = {Example1Impl::pr, Example1Impl::pr_grad, Example1Impl::pr_hess};
    s.body_force = {[](const Vec2& p) -> Vec2 {
                      auto h = Example1Impl::hess(p);
                      Vec2 lap(h[0].trace(), h[1].trace());
                      return -lap - Example1Impl::pr_grad(p);
                    },
                    nullptr, nullptr};
    s.pseudostress = {
        [](const Vec2& p) -> Mat2 {
          return Example1Impl::jac(p) + Example1Impl::pr(p) * Mat2::Identity();
        },
        [](const Vec2& p) -> std::array<Mat2, 2> {
          auto h = Example1Impl::hess(p);
          Vec2 gp = Example1Impl::pr_grad(p);
          std::array<Mat2, 2> d;
          for (int dir = 0; dir < 2; ++dir) {
            // d(grad u)/dx_dir has rows d(grad u_i)/dx_dir
            Mat2 m;
            m << h[0](0, dir), h[0](1, dir), h[1](0, dir), h[1](1, dir);
            d[dir] = m + gp(dir) * Mat2::Identity();
          }
          return d;
        }};
    return s;
  }();
  return ex;
}

}  // namespace stokeslab
