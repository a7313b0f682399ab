#include "stokeslab/errors.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "stokeslab/quadrature.hpp"

namespace stokeslab {

double l2_diff(const Triangulation& mesh, const PiecewiseField& a, const PiecewiseField& b,
               int degree) {
  if (a.ncomp != b.ncomp) throw std::invalid_argument("component counts differ");
  const auto& rule = tri_rule(degree);
  std::vector<double> va(a.ncomp), vb(b.ncomp);
  double total = 0.0;
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const auto& t = mesh.triangles[k];
    const Vec2 p0 = mesh.vertices[t[0]], p1 = mesh.vertices[t[1]], p2 = mesh.vertices[t[2]];
    const double area =
        0.5 * std::abs((p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y()));
    double local = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Vec2 x = rule.points[q][0] * p0 + rule.points[q][1] * p1 + rule.points[q][2] * p2;
      a.eval(k, x, va.data());
      b.eval(k, x, vb.data());
      double s = 0.0;
      for (int c = 0; c < a.ncomp; ++c) s += (va[c] - vb[c]) * (va[c] - vb[c]);
      local += rule.weights[q] * s;
    }
    total += local * area;
  }
  return std::sqrt(total);
}

double l2_inner(const Triangulation& mesh, const PiecewiseField& a, const PiecewiseField& b,
                int degree) {
  if (a.ncomp != b.ncomp) throw std::invalid_argument("component counts differ");
  const auto& rule = tri_rule(degree);
  std::vector<double> va(a.ncomp), vb(b.ncomp);
  double total = 0.0;
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const auto& t = mesh.triangles[k];
    const Vec2 p0 = mesh.vertices[t[0]], p1 = mesh.vertices[t[1]], p2 = mesh.vertices[t[2]];
    const double area =
        0.5 * std::abs((p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y()));
    double local = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Vec2 x = rule.points[q][0] * p0 + rule.points[q][1] * p1 + rule.points[q][2] * p2;
      a.eval(k, x, va.data());
      b.eval(k, x, vb.data());
      double s = 0.0;
      for (int c = 0; c < a.ncomp; ++c) s += va[c] * vb[c];
      local += rule.weights[q] * s;
    }
    total += local * area;
  }
  return total;
}

double l2_norm(const Triangulation& mesh, const PiecewiseField& a, int degree) {
  PiecewiseField zero{a.ncomp, [nc = a.ncomp](int, const Vec2&, double* out) {
                        for (int c = 0; c < nc; ++c) out[c] = 0.0;
                      }};
  return l2_diff(mesh, a, zero, degree);
}

ConvergenceTable rate_table(const std::vector<ErrorReport>& reports) {
  ConvergenceTable table;
  std::map<std::string, std::pair<int, double>> prev;  // metric -> (level, value)
  for (const auto& rep : reports) {
    for (const auto& [name, value] : rep.metrics) {
      TableRow row{rep.level, rep.h, name, value, std::nullopt};
      auto it = prev.find(name);
      if (it != prev.end() && it->second.first == rep.level - 1 && it->second.second != 0.0 &&
          value != 0.0)
        row.rate = std::log2(std::abs(it->second.second / value));
      prev[name] = {rep.level, value};
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace stokeslab
