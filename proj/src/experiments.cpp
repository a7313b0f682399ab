#include "stokeslab/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "stokeslab/recovery.hpp"

namespace stokeslab {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

PiecewiseField zero_vector_field() {
  return {2, [](int, const Vec2&, double* out) { out[0] = out[1] = 0.0; }};
}

}  // namespace

const char* experiment_name(RunConfig::Experiment e) {
  switch (e) {
    case RunConfig::Experiment::Source: return "source";
    case RunConfig::Experiment::Eigs: return "eigs";
    case RunConfig::Experiment::Constants: return "constants";
    case RunConfig::Experiment::ExpansionCheck: return "expansion-check";
  }
  return "?";
}

const char* element_name(Space s) {
  switch (s) {
    case Space::CR: return "cr";
    case Space::ECR: return "ecr";
    case Space::RT: return "rt";
    case Space::P0: return "p0";
  }
  return "?";
}

void validate(const RunConfig& cfg) {
  if (cfg.level_min < 1 || cfg.level_max > 9 || cfg.level_min > cfg.level_max)
    throw std::invalid_argument("level range must be ascending within 1..9");
  if (cfg.k < 1) throw std::invalid_argument("k must be >= 1");
  for (double r : cfg.ref_eigs)
    if (!(r > 0.0)) throw std::invalid_argument("reference eigenvalues must be positive");
  if (cfg.element == Space::P0) throw std::invalid_argument("element must be cr, ecr or rt");
  if (cfg.experiment == RunConfig::Experiment::Eigs && cfg.element == Space::RT)
    throw std::invalid_argument("the eigenvalue study supports cr and ecr");
}

ConvergenceTable run_source(const RunConfig& cfg) {
  validate(cfg);
  const auto& ex = example1();
  std::vector<ErrorReport> reports;
  for (int level = cfg.level_min; level <= cfg.level_max; ++level) {
    Triangulation mesh = build_uniform(level);
    PiecewiseField f = to_piecewise(ex.body_force);
    const double fnorm = l2_norm(mesh, f);

    ErrorReport rep{level, mesh.h, {}};
    SaddleSystem rt_sys = assemble_rt_mixed(mesh, f);
    SourceSolution rt_sol = solve_source(rt_sys);

    if (cfg.element == Space::RT) {
      DiscreteField pi_rt_sigma = interpolate_rt(mesh, ex.pseudostress);
      rep.metrics.emplace_back("sigma_superclose",
                               l2_diff(mesh, value_field(mesh, rt_sol.primary),
                                       value_field(mesh, pi_rt_sigma)) /
                                   fnorm);
      auto rec = recover_all(mesh, Space::RT, nullptr, &rt_sol);
      rep.metrics.emplace_back(
          "sigma_recovered",
          l2_diff(mesh, lifted_eval(mesh, *rec.sigma), to_piecewise(ex.pseudostress)) / fnorm);
    } else {
      SaddleSystem nc_sys = assemble_stokes(cfg.element, mesh, f);
      SourceSolution nc_sol = solve_source(nc_sys);

      DiscreteField php = interp_pressure(mesh, ex.pseudostress);
      PiecewiseField piu = (cfg.element == Space::CR)
                               ? interp_velocity_cr(mesh, ex.pseudostress)
                               : interp_velocity_ecr(mesh, ex.pseudostress);
      auto rec = recover_all(mesh, cfg.element, &nc_sol, &rt_sol);

      rep.metrics.emplace_back(
          "p_err",
          l2_diff(mesh, value_field(mesh, nc_sol.secondary), to_piecewise(ex.pressure)) / fnorm);
      rep.metrics.emplace_back("gradu_err", l2_diff(mesh, gradient_field(mesh, nc_sol.primary),
                                                    jacobian_piecewise(ex.velocity)) /
                                                fnorm);
      rep.metrics.emplace_back("p_superclose",
                               l2_diff(mesh, value_field(mesh, nc_sol.secondary),
                                       value_field(mesh, php)) /
                                   fnorm);
      rep.metrics.emplace_back(
          "gradu_superclose",
          l2_diff(mesh, gradient_field(mesh, nc_sol.primary), piu) / fnorm);
      rep.metrics.emplace_back(
          "p_recovered",
          l2_diff(mesh, lifted_eval(mesh, *rec.pressure), to_piecewise(ex.pressure)) / fnorm);
      rep.metrics.emplace_back("gradu_recovered",
                               l2_diff(mesh, lifted_eval(mesh, *rec.grad_u),
                                       jacobian_piecewise(ex.velocity)) /
                                   fnorm);
      rep.metrics.emplace_back(
          "sigma_recovered",
          l2_diff(mesh, lifted_eval(mesh, *rec.sigma), to_piecewise(ex.pseudostress)) / fnorm);
    }
    reports.push_back(std::move(rep));
  }
  return rate_table(reports);
}

ConvergenceTable run_eigs(const RunConfig& cfg) {
  validate(cfg);
  std::vector<ErrorReport> reports;
  std::vector<double> prev_lambda;
  for (int level = cfg.level_min; level <= cfg.level_max; ++level) {
    Triangulation mesh = build_uniform(level);
    SaddleSystem sys = assemble_stokes(cfg.element, mesh, zero_vector_field());
    MassMatrix mass = assemble_mass(cfg.element, mesh);
    auto pairs = solve_eigs(sys, mass, cfg.k);

    ErrorReport rep{level, mesh.h, {}};
    for (int i = 0; i < cfg.k; ++i) {
      const std::string idx = std::to_string(i + 1);
      rep.metrics.emplace_back("lambda_" + idx, pairs[i].lambda);
      if (i < 3)
        rep.metrics.emplace_back("relerr_" + idx,
                                 std::abs(cfg.ref_eigs[i] - pairs[i].lambda) / cfg.ref_eigs[i]);
      if (!prev_lambda.empty()) {
        const double exp = extrapolate(pairs[i].lambda, prev_lambda[i]);
        rep.metrics.emplace_back("lambda_exp_" + idx, exp);
        if (i < 3)
          rep.metrics.emplace_back("relerr_exp_" + idx,
                                   std::abs(cfg.ref_eigs[i] - exp) / cfg.ref_eigs[i]);
      }
    }
    prev_lambda.resize(cfg.k);
    for (int i = 0; i < cfg.k; ++i) prev_lambda[i] = pairs[i].lambda;
    reports.push_back(std::move(rep));
  }
  return rate_table(reports);
}

ConvergenceTable run_expansion_check(const RunConfig& cfg) {
  validate(cfg);
  const auto& ex = example1();
  std::vector<ErrorReport> reports;
  std::vector<double> res1s, res2s, res3s, plat_cr, plat_ecr;

  for (int level = cfg.level_min; level <= cfg.level_max; ++level) {
    Triangulation mesh = build_uniform(level);
    ExpansionConstants c = compute_constants(mesh);
    const double h2 = mesh.h * mesh.h;

    const double lhs1 = l2_diff(mesh, jacobian_piecewise(ex.velocity),
                                interp_velocity_cr(mesh, ex.pseudostress));
    const double lhs2 = l2_diff(mesh, jacobian_piecewise(ex.velocity),
                                interp_velocity_ecr(mesh, ex.pseudostress));
    DiscreteField pi_cr_u = interpolate_cr(mesh, ex.velocity);
    PiecewiseField u_exact = to_piecewise(ex.velocity);
    const double lhs3 =
        l2_inner(mesh, u_exact, u_exact) -
        l2_inner(mesh, value_field(mesh, pi_cr_u), u_exact);

    const double res1 = std::abs(lhs1 * lhs1 - h2 * eval_F1(ex.pseudostress, mesh, c));
    const double res2 = std::abs(lhs2 * lhs2 - h2 * eval_F2(ex.pseudostress, mesh, c));
    const double res3 = std::abs(lhs3 - h2 * eval_F3(ex.velocity, mesh, c));
    res1s.push_back(res1);
    res2s.push_back(res2);
    res3s.push_back(res3);

    // h^2 coefficient of the eigenvalue error; level-independent in the limit
    SaddleSystem cr_sys = assemble_stokes(Space::CR, mesh, zero_vector_field());
    MassMatrix cr_mass = assemble_mass(Space::CR, mesh);
    const double lam_cr = solve_eigs(cr_sys, cr_mass, 1)[0].lambda;
    SaddleSystem ecr_sys = assemble_stokes(Space::ECR, mesh, zero_vector_field());
    MassMatrix ecr_mass = assemble_mass(Space::ECR, mesh);
    const double lam_ecr = solve_eigs(ecr_sys, ecr_mass, 1)[0].lambda;
    plat_cr.push_back((cfg.ref_eigs[0] - lam_cr) / h2);
    plat_ecr.push_back((cfg.ref_eigs[0] - lam_ecr) / h2);

    ErrorReport rep{level, mesh.h, {}};
    rep.metrics.emplace_back("f1_residual", res1);
    rep.metrics.emplace_back("f2_residual", res2);
    rep.metrics.emplace_back("f3_residual", res3);
    rep.metrics.emplace_back("plateau_cr", plat_cr.back());
    rep.metrics.emplace_back("plateau_ecr", plat_ecr.back());
    reports.push_back(std::move(rep));
  }

  ConvergenceTable table = rate_table(reports);
  // summary rows at the finest level: observed orders of the residuals over
  // the last pair and the plateau ratios, with pass flags
  const std::size_t n = res1s.size();
  if (n >= 2) {
    const int level = cfg.level_max;
    const double h = reports.back().h;
    auto order = [](const std::vector<double>& v) {
      return std::log2(v[v.size() - 2] / v[v.size() - 1]);
    };
    const double o1 = order(res1s), o2 = order(res2s), o3 = order(res3s);
    const double r_cr = plat_cr[n - 2] / plat_cr[n - 1];
    const double r_ecr = plat_ecr[n - 2] / plat_ecr[n - 1];
    table.rows.push_back({level, h, "f1_order", o1, std::nullopt});
    table.rows.push_back({level, h, "f2_order", o2, std::nullopt});
    table.rows.push_back({level, h, "f3_order", o3, std::nullopt});
    table.rows.push_back({level, h, "plateau_cr_ratio", r_cr, std::nullopt});
    table.rows.push_back({level, h, "plateau_ecr_ratio", r_ecr, std::nullopt});
    table.rows.push_back({level, h, "orders_ok",
                          (o1 >= 3.5 && o2 >= 3.5 && o3 >= 3.5) ? 1.0 : 0.0, std::nullopt});
    table.rows.push_back({level, h, "plateau_ok",
                          (std::abs(r_cr - 1.0) <= 0.05 && std::abs(r_ecr - 1.0) <= 0.05) ? 1.0
                                                                                          : 0.0,
                          std::nullopt});
  }
  return table;
}

std::string constants_json(int level) {
  ExpansionConstants c = compute_constants(build_uniform(level));
  std::ostringstream os;
  os << "{\"level\":" << level << ",\"gamma\":[";
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) os << ((i || j) ? "," : "") << fmt(c.gamma(i, j));
  os << "],\"eta\":[";
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) os << ((i || j) ? "," : "") << fmt(c.eta(i, j));
  os << "],\"zeta\":[" << fmt(c.zeta[0]) << "," << fmt(c.zeta[1]) << "," << fmt(c.zeta[2])
     << "]}";
  return os.str();
}

std::string to_csv(const ConvergenceTable& table) {
  std::ostringstream os;
  os << "level,h,metric,value,rate\n";
  for (const auto& row : table.rows) {
    os << row.level << "," << fmt(row.h) << "," << row.metric << "," << fmt(row.value) << ",";
    if (row.rate) os << fmt(*row.rate);
    os << "\n";
  }
  return os.str();
}

std::string to_json(const ConvergenceTable& table, const RunConfig& cfg) {
  std::ostringstream os;
  os << "{\"config\":{\"experiment\":\"" << experiment_name(cfg.experiment) << "\",\"element\":\""
     << element_name(cfg.element) << "\",\"levels\":[" << cfg.level_min << "," << cfg.level_max
     << "],\"k\":" << cfg.k << ",\"ref_eigs\":[" << fmt(cfg.ref_eigs[0]) << ","
     << fmt(cfg.ref_eigs[1]) << "," << fmt(cfg.ref_eigs[2]) << "]},\"records\":[";
  bool first = true;
  for (const auto& row : table.rows) {
    os << (first ? "" : ",") << "{\"level\":" << row.level << ",\"h\":" << fmt(row.h)
       << ",\"metric\":\"" << row.metric << "\",\"value\":" << fmt(row.value) << ",\"rate\":";
    if (row.rate)
      os << fmt(*row.rate);
    else
      os << "null";
    os << "}";
    first = false;
  }
  os << "]}";
  return os.str();
}

std::string run_to_string(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.experiment == RunConfig::Experiment::Constants) return constants_json(cfg.level_min);
  ConvergenceTable table;
  switch (cfg.experiment) {
    case RunConfig::Experiment::Source: table = run_source(cfg); break;
    case RunConfig::Experiment::Eigs: table = run_eigs(cfg); break;
    case RunConfig::Experiment::ExpansionCheck: table = run_expansion_check(cfg); break;
    default: break;
  }
  return cfg.format == RunConfig::Format::Csv ? to_csv(table) : to_json(table, cfg);
}

}  // namespace stokeslab
