#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stokeslab/fields.hpp"
#include "stokeslab/mesh.hpp"

namespace stokeslab {

/// sqrt of the element-wise quadrature of |a - b|^2.
double l2_diff(const Triangulation& mesh, const PiecewiseField& a, const PiecewiseField& b,
               int degree = 8);
double l2_norm(const Triangulation& mesh, const PiecewiseField& a, int degree = 8);
double l2_inner(const Triangulation& mesh, const PiecewiseField& a, const PiecewiseField& b,
                int degree = 8);

/// Named error metrics of one refinement level.
struct ErrorReport {
  int level = 0;
  double h = 0.0;
  std::vector<std::pair<std::string, double>> metrics;
};

struct TableRow {
  int level = 0;
  double h = 0.0;
  std::string metric;
  double value = 0.0;
  std::optional<double> rate;  // log2(e_2h / e_h); absent on the first level or for zero errors
};

struct ConvergenceTable {
  std::vector<TableRow> rows;
};

/// Per-metric rates against the immediately coarser level.
ConvergenceTable rate_table(const std::vector<ErrorReport>& reports);

}  // namespace stokeslab
