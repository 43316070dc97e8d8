#pragma once

#include <map>
#include <string>

#include "riqs/qops.hpp"

namespace riqs {
namespace experiments {

struct Check {
  std::string name;
  double value = 0.0;   // measured quantity (usually a defect or error)
  double tol = 0.0;     // threshold it is compared against
  bool pass = false;
  // comparison sense: defect checks pass when value <= tol; lower-bound
  // checks (e.g. strict inequalities between coefficients) set flip = true
  // and pass when value >= tol
  bool flip = false;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentResult {
  std::string name;
  bool pass = true;
  std::vector<Check> checks;
  std::map<std::string, Table> tables;
};

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::string claim;  // the mathematical statement exercised
};

// Alphabetized catalog; one entry per acceptance experiment.
std::vector<ExperimentInfo> catalog();

// Runs one experiment; throws riqs::Error for unknown names. Numeric
// parameters override experiment defaults; unknown keys are rejected by the
// CLI schema validation before this call. tol_scale multiplies every
// tolerance (CI headroom); 1.0 reproduces the pinned values.
ExperimentResult run_experiment(const std::string& name,
                                const std::map<std::string, double>& params,
                                uint64_t seed, double tol_scale = 1.0);

// Recognized numeric parameter keys for an experiment (schema validation).
std::vector<std::string> allowed_params(const std::string& name);

}  // namespace experiments
}  // namespace riqs
