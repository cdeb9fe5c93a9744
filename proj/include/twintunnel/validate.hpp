#pragma once

#include <string>
#include <vector>

#include "twintunnel/config.hpp"

namespace twintunnel {

struct CheckResult {
  std::string name;
  std::string detail;
  double measured = 0.0;  ///< worst deviation found
  double limit = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool pass = false;
};

/// The three independent ground-truth scans: closed-form |T|^2 against the
/// Runge-Kutta integration, analytic delay against finite differences, and
/// sweep probabilities (distinguishable product and superposition) against
/// the momentum-grid evaluation.
ValidationReport run_validation(const SweepConfig& sweep, const oracle::GridSpec& grid,
                                const Tolerances& tol);

}  // namespace twintunnel
