#pragma once

#include "twintunnel/barrier.hpp"
#include "twintunnel/states.hpp"

namespace twintunnel::oracle {

/// Resolution knobs for the numerical ground-truth checks.
struct GridSpec {
  double span = 8.0;          ///< half-window around each central momentum, in widths P
  int points = 512;           ///< grid points per packet window of 2*span*P
  double energy_step = 1e-6;  ///< finite-difference step (base energy units)

  void validate() const;  // points >= 64, span >= 5, energy_step > 0
};

struct OdeResult {
  double t2 = 0.0;  ///< |T|^2 from flux matching
  double r2 = 0.0;  ///< |R|^2, kept for the flux-conservation check
};

/// Integrates the stationary wave equation -(hbar^2/2m) u'' + V u = E u
/// across the barrier with fixed-step fourth-order Runge-Kutta, from the
/// transmitted side backward, and extracts the scattering coefficients by
/// matching plane waves at the left edge.  The step count doubles until two
/// consecutive passes agree to 1e-8; failure to converge throws
/// std::runtime_error.
OdeResult scatter_ode(double p, const BarrierSpec& b);

/// |T|^2 from scatter_ode.
double transmission_ode(double p, const BarrierSpec& b);

/// The coefficient c in u'' = c u used by the integrator inside the
/// barrier: 2 m (V0 - E) / hbar^2.
double barrier_coefficient(double p, const BarrierSpec& b);

/// Centered finite difference of the unwrapped transmission phase,
/// hbar (Omega(E+dE) - Omega(E-dE)) / (2 dE).  The step is halved while the
/// wrapped phase change per step is too large to unwrap reliably; more than
/// 20 halvings throws std::runtime_error.
double delay_fd(double p, const BarrierSpec& b, const GridSpec& g);

/// Exact double-transmission probability for the scenario's initial state:
/// the two-particle amplitude is materialized on a momentum grid, every
/// mode of each particle is scaled by its exact transmission amplitude, and
/// the squared norm of the transmitted component is divided by the squared
/// norm of the initial state.  Discretization is the only error source;
/// the grid refines until the initial norm matches its closed form to 1e-6,
/// else std::runtime_error.  A zero-norm initial state (Pauli-excluded
/// fermion product) throws std::domain_error.
double joint_transmission_grid(const ScenarioSpec& s, const BarrierSpec& b, const GridSpec& g);

}  // namespace twintunnel::oracle
