#pragma once

#include <array>
#include <vector>

namespace stokeslab {

/// Quadrature rule on the triangle in barycentric coordinates; weights sum to
/// one and are scaled by the element area at use.
struct TriangleRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

/// Gauss rule on [0,1]; weights sum to one.
struct EdgeRule {
  int degree = 0;
  std::vector<double> points;
  std::vector<double> weights;
};

const TriangleRule& tri_rule(int degree);  // degree in 1..10
const EdgeRule& edge_rule(int degree);     // degree in 1..19

}  // namespace stokeslab
