#pragma once

#include <complex>
#include <optional>

namespace twintunnel {

/// Rectangular potential barrier: height V0 on the interval [0, d], zero
/// elsewhere, together with the constants that fix the unit system.
///
/// The defaults are the natural units m = hbar = V0 = 1 in which the
/// momentum unit is sqrt(2 m V0) and the length unit hbar / sqrt(m V0).
struct BarrierSpec {
  double V0 = 1.0;    ///< barrier height, > 0
  double d = 0.7;     ///< barrier width, >= 0
  double m = 1.0;     ///< particle mass, > 0
  double hbar = 1.0;  ///< reduced Planck constant, > 0

  /// Throws std::invalid_argument when a field violates its range.
  void validate() const;
};

/// Momentum unit sqrt(2 m V0): the momentum whose kinetic energy equals V0.
double momentum_unit(const BarrierSpec& b);

/// Length unit hbar / sqrt(m V0).
double length_unit(const BarrierSpec& b);

double momentum_to_base(double p_mu, const BarrierSpec& b);
double momentum_to_mu(double p_base, const BarrierSpec& b);

/// Wavenumbers of the stationary mode with incident momentum p.
struct ModeParams {
  double k0 = 0.0;              ///< incident wavenumber sqrt(2 m E) / hbar
  std::complex<double> k1;      ///< in-barrier wavenumber sqrt(2 m (V0-E)) / hbar;
                                ///< purely imaginary continuation above the barrier
  double E = 0.0;               ///< kinetic energy p^2 / 2m
};

/// Everything the sweep needs about one packet's central mode.
struct ScatterResult {
  std::complex<double> amplitude;     ///< transmission amplitude T
  double magnitude2 = 0.0;            ///< |T|^2
  double phase = 0.0;                 ///< arg T, principal value
  double tau = 0.0;                   ///< Wigner-Smith delay hbar dOmega/dE
  double delta_t = 0.0;               ///< traversal time d m / p + tau
  std::optional<double> p_eff;        ///< m d / delta_t; empty when delta_t <= 0 or d = 0
};

/// Reference point for chained phase unwrapping along a sweep.
struct PhaseRef {
  double p = 0.0;
  double phase = 0.0;
};

/// Throws std::domain_error unless p > 0.
ModeParams mode_params(double p, const BarrierSpec& b);

/// Complex transmission amplitude of the mode with incident momentum p.
///
/// Evaluated in a form that is analytic in the energy, so the same code
/// path covers E < V0, E = V0 and E > V0 and |T|^2 <= 1 throughout.
std::complex<double> transmission(double p, const BarrierSpec& b);

/// arg T, shifted by a multiple of 2*pi to lie nearest ref->phase when a
/// reference is given; principal value otherwise.
double phase_unwrapped(double p, const BarrierSpec& b,
                       std::optional<PhaseRef> ref = std::nullopt);

/// Wigner-Smith delay, computed analytically as hbar * Im(T'(E)/T(E)).
/// Branch-free; finite for every p > 0 because T has no zeros for this
/// barrier.
double delay_time(double p, const BarrierSpec& b);

/// Momentum of the virtual free packet that crosses the barrier width in
/// the traversal time d m / p + tau.  Empty when d = 0 (no barrier; callers
/// treat transmitted overlaps as the initial ones) or when the traversal
/// time is not positive.
std::optional<double> effective_momentum(double p, const BarrierSpec& b);

/// One-call bundle of the operations above for a single momentum.
ScatterResult scatter(double p, const BarrierSpec& b);

}  // namespace twintunnel
