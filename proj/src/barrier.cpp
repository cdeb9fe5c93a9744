#include "twintunnel/barrier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twintunnel {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

// Below this |z| the direct formulas lose digits to cancellation; the
// truncated series are exact to machine precision there.
constexpr double kSeriesCut = 0.1;

// sinh(z)/z, regular at z = 0.
Complex sinhc(Complex z) {
  if (std::abs(z) < kSeriesCut) {
    const Complex z2 = z * z;
    return 1.0 + z2 * (1.0 / 6.0 + z2 * (1.0 / 120.0 + z2 * (1.0 / 5040.0 + z2 / 362880.0)));
  }
  return std::sinh(z) / z;
}

// (cosh(z) - sinhc(z)) / z^2, regular at z = 0 with limit 1/3.
Complex cosh_sinhc_diff(Complex z) {
  if (std::abs(z) < kSeriesCut) {
    const Complex z2 = z * z;
    return 1.0 / 3.0 +
           z2 * (1.0 / 30.0 + z2 * (1.0 / 840.0 + z2 * (1.0 / 45360.0 + z2 / 3991680.0)));
  }
  return (std::cosh(z) - sinhc(z)) / (z * z);
}

struct Amplitude {
  double k0 = 0.0;
  double k0_prime = 0.0;  // dk0/dE
  Complex G;              // T = 2 k0 exp(-i k0 d) / G
  Complex G_prime;        // dG/dE
  Complex T;
};

// The textbook denominator 2 k0 k1 cosh(k1 d) + i (k1^2 - k0^2) sinh(k1 d)
// divided through by k1, which removes the spurious singularity at E = V0:
//   G = 2 k0 cosh(k1 d) + i (k1^2 - k0^2) d sinhc(k1 d)
// G is entire in the energy (it depends on k1 only through k1^2) and has no
// zeros for p > 0, so T and d(log T)/dE are well defined everywhere.
Amplitude evaluate(double p, const BarrierSpec& b) {
  b.validate();
  if (!(p > 0.0)) throw std::domain_error("barrier: momentum must be positive");

  const double h2 = b.hbar * b.hbar;
  const double E = p * p / (2.0 * b.m);
  const double k0 = p / b.hbar;
  const double w = 2.0 * b.m * (b.V0 - E) / h2;  // k1^2, negative above the barrier
  const Complex k1 = std::sqrt(Complex(w, 0.0));
  const Complex u = k1 * b.d;

  const Complex C = std::cosh(u);
  const Complex S = sinhc(u);
  const Complex H = cosh_sinhc_diff(u);

  Amplitude a;
  a.k0 = k0;
  a.k0_prime = b.m / (h2 * k0);
  a.G = 2.0 * k0 * C + kI * (w - k0 * k0) * b.d * S;
  // term-wise energy derivative; dC/dE = -(m d^2/h^2) S, dS/dE = -(m d^2/h^2) H
  a.G_prime = 2.0 * a.k0_prime * C - 2.0 * k0 * (b.m * b.d * b.d / h2) * S -
              kI * b.d * (b.m / h2) * (4.0 * S + (w - k0 * k0) * b.d * b.d * H);
  a.T = 2.0 * k0 * std::exp(-kI * k0 * b.d) / a.G;
  return a;
}

}  // namespace

void BarrierSpec::validate() const {
  if (!(V0 > 0.0)) throw std::invalid_argument("BarrierSpec: V0 must be positive");
  if (!(d >= 0.0)) throw std::invalid_argument("BarrierSpec: d must be non-negative");
  if (!(m > 0.0)) throw std::invalid_argument("BarrierSpec: m must be positive");
  if (!(hbar > 0.0)) throw std::invalid_argument("BarrierSpec: hbar must be positive");
}

double momentum_unit(const BarrierSpec& b) { return std::sqrt(2.0 * b.m * b.V0); }

double length_unit(const BarrierSpec& b) { return b.hbar / std::sqrt(b.m * b.V0); }

double momentum_to_base(double p_mu, const BarrierSpec& b) { return p_mu * momentum_unit(b); }

double momentum_to_mu(double p_base, const BarrierSpec& b) { return p_base / momentum_unit(b); }

ModeParams mode_params(double p, const BarrierSpec& b) {
  b.validate();
  if (!(p > 0.0)) throw std::domain_error("mode_params: momentum must be positive");
  ModeParams mp;
  mp.E = p * p / (2.0 * b.m);
  mp.k0 = p / b.hbar;
  mp.k1 = std::sqrt(Complex(2.0 * b.m * (b.V0 - mp.E), 0.0)) / b.hbar;
  return mp;
}

std::complex<double> transmission(double p, const BarrierSpec& b) { return evaluate(p, b).T; }

double phase_unwrapped(double p, const BarrierSpec& b, std::optional<PhaseRef> ref) {
  const double raw = std::arg(transmission(p, b));
  if (!ref) return raw;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return raw + two_pi * std::round((ref->phase - raw) / two_pi);
}

double delay_time(double p, const BarrierSpec& b) {
  const Amplitude a = evaluate(p, b);
  // d(log T)/dE = k0'/k0 - i d k0' - G'/G; tau is hbar times its imaginary part
  const Complex dlog = a.k0_prime / a.k0 - kI * b.d * a.k0_prime - a.G_prime / a.G;
  return b.hbar * dlog.imag();
}

std::optional<double> effective_momentum(double p, const BarrierSpec& b) {
  b.validate();
  if (!(p > 0.0)) throw std::domain_error("effective_momentum: momentum must be positive");
  if (b.d == 0.0) return std::nullopt;
  const double dt = b.d * b.m / p + delay_time(p, b);
  if (!(dt > 0.0)) return std::nullopt;
  return b.m * b.d / dt;
}

ScatterResult scatter(double p, const BarrierSpec& b) {
  const Amplitude a = evaluate(p, b);
  ScatterResult r;
  r.amplitude = a.T;
  r.magnitude2 = std::norm(a.T);
  r.phase = std::arg(a.T);
  const Complex dlog = a.k0_prime / a.k0 - kI * b.d * a.k0_prime - a.G_prime / a.G;
  r.tau = b.hbar * dlog.imag();
  r.delta_t = b.d * b.m / p + r.tau;
  if (b.d > 0.0 && r.delta_t > 0.0) r.p_eff = b.m * b.d / r.delta_t;
  return r;
}

}  // namespace twintunnel
