#pragma once

#include <map>
#include <string>

#include "twintunnel/oracle.hpp"
#include "twintunnel/sweep.hpp"

namespace twintunnel {

/// Numerical tolerances of the validation checks.  The defaults are the
/// project's reference values; a config file may override them.
struct Tolerances {
  double algebraic = 1e-12;        ///< exact algebraic identities
  double derivative_rel = 1e-5;    ///< analytic vs finite-difference delay
  double transmission_abs = 1e-6;  ///< closed form vs integrated |T|^2
  double grid_rel = 0.05;          ///< model vs momentum-grid probabilities
};

/// Flat key=value configuration file ('#' starts a comment).  Unknown keys
/// are rejected.  Command-line flags override file values.
std::map<std::string, std::string> load_key_values(const std::string& path);

void apply_config(const std::map<std::string, std::string>& kv, SweepConfig& sweep,
                  oracle::GridSpec& grid, Tolerances& tol);

}  // namespace twintunnel
