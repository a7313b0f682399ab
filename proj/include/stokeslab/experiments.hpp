#pragma once

#include <array>
#include <string>

#include "stokeslab/errors.hpp"
#include "stokeslab/expansion.hpp"
#include "stokeslab/solver.hpp"

namespace stokeslab {

struct RunConfig {
  enum class Experiment { Source, Eigs, Constants, ExpansionCheck };
  enum class Format { Csv, Json };

  Experiment experiment = Experiment::Source;
  Space element = Space::CR;  // cr | ecr | rt
  int level_min = 3;
  int level_max = 6;
  int k = 1;
  std::string out;  // empty writes to stdout
  Format format = Format::Csv;
  std::array<double, 3> ref_eigs{52.344691169, 92.124393972, 92.124393972};
};

void validate(const RunConfig& cfg);

/// Source-problem convergence study: discretization errors, supercloseness
/// against the pseudostress interpolations, and postprocessed errors, all
/// normalized by the L2 norm of the body force.
ConvergenceTable run_source(const RunConfig& cfg);

/// Eigenvalue study: first k eigenvalues per level, relative errors against
/// the references, and Richardson-extrapolated values from consecutive levels.
ConvergenceTable run_eigs(const RunConfig& cfg);

/// Consistency checks of the h^2 expansion: residuals of the three
/// interpolation-error identities and the (lambda_ref - lambda_h)/h^2 plateau.
ConvergenceTable run_expansion_check(const RunConfig& cfg);

/// JSON dump of gamma (8x8 row-major), eta, zeta.
std::string constants_json(int level);

std::string to_csv(const ConvergenceTable& table);
std::string to_json(const ConvergenceTable& table, const RunConfig& cfg);

/// Dispatch on cfg.experiment and serialize in the requested format.
std::string run_to_string(const RunConfig& cfg);

const char* experiment_name(RunConfig::Experiment e);
const char* element_name(Space s);

}  // namespace stokeslab
