#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "stokeslab/experiments.hpp"

namespace {

int parse_levels(const std::string& spec, int& lo, int& hi) {
  const auto pos = spec.find("..");
  try {
    if (pos == std::string::npos) {
      lo = hi = std::stoi(spec);
    } else {
      lo = std::stoi(spec.substr(0, pos));
      hi = std::stoi(spec.substr(pos + 2));
    }
  } catch (const std::exception&) {
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stokes finite-element laboratory: CR/ECR/RT source and eigenvalue studies"};

  std::string experiment = "source", element = "cr", levels = "3..6", out, format = "csv",
              ref_eigs;
  int k = 1;
  app.add_option("--experiment", experiment, "source | eigs | constants | expansion-check")
      ->check(CLI::IsMember({"source", "eigs", "constants", "expansion-check"}));
  app.add_option("--element", element, "cr | ecr | rt")
      ->check(CLI::IsMember({"cr", "ecr", "rt"}));
  app.add_option("--levels", levels, "refinement level range, e.g. 3..6");
  app.add_option("--k", k, "number of eigenvalues");
  app.add_option("--out", out, "output path (default: stdout)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--ref-eigs", ref_eigs, "reference eigenvalues v1,v2,v3");
  CLI11_PARSE(app, argc, argv);

  stokeslab::RunConfig cfg;
  const bool json = format == "json";
  cfg.format = json ? stokeslab::RunConfig::Format::Json : stokeslab::RunConfig::Format::Csv;

  auto fail = [&](const std::string& message) {
    if (json)
      std::cerr << "{\"error\":\"" << message << "\"}\n";
    else
      std::cerr << "error: " << message << "\n";
    return 1;
  };

  if (experiment == "source")
    cfg.experiment = stokeslab::RunConfig::Experiment::Source;
  else if (experiment == "eigs")
    cfg.experiment = stokeslab::RunConfig::Experiment::Eigs;
  else if (experiment == "constants")
    cfg.experiment = stokeslab::RunConfig::Experiment::Constants;
  else
    cfg.experiment = stokeslab::RunConfig::Experiment::ExpansionCheck;

  cfg.element = element == "cr"    ? stokeslab::Space::CR
                : element == "ecr" ? stokeslab::Space::ECR
                                   : stokeslab::Space::RT;
  cfg.k = k;
  if (parse_levels(levels, cfg.level_min, cfg.level_max)) return fail("cannot parse --levels");
  if (!ref_eigs.empty()) {
    std::istringstream is(ref_eigs);
    std::string tok;
    int i = 0;
    while (std::getline(is, tok, ',') && i < 3) {
      try {
        cfg.ref_eigs[i++] = std::stod(tok);
      } catch (const std::exception&) {
        return fail("cannot parse --ref-eigs");
      }
    }
    if (i != 3) return fail("--ref-eigs needs three comma-separated values");
  }

  std::string result;
  try {
    result = stokeslab::run_to_string(cfg);
  } catch (const std::exception& e) {
    return fail(e.what());
  }

  if (out.empty()) {
    std::cout << result;
    if (!result.empty() && result.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) return fail("cannot open output file " + out);
    f << result;
  }
  return 0;
}
