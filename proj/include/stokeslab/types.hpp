#pragma once

#include <Eigen/Dense>

namespace stokeslab {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline double trace2(const Mat2& t) { return t(0, 0) + t(1, 1); }

/// Deviatoric part of a 2x2 tensor.
inline Mat2 dev(const Mat2& t) { return t - 0.5 * trace2(t) * Mat2::Identity(); }

inline Mat2 outer(const Vec2& a, const Vec2& b) { return a * b.transpose(); }

}  // namespace stokeslab
