#include "twintunnel/validate.hpp"

#include <cmath>
#include <cstdio>

namespace twintunnel {

namespace {

std::string format_range(double lo, double hi, int n, const char* what) {
  char buf[120];
  std::snprintf(buf, sizeof(buf), "%d %s in [%.3g, %.3g] m.u.", n, what, lo, hi);
  return buf;
}

}  // namespace

ValidationReport run_validation(const SweepConfig& sweep, const oracle::GridSpec& grid,
                                const Tolerances& tol) {
  grid.validate();
  const BarrierSpec bar = sweep.barrier();
  const double mu = momentum_unit(bar);

  ValidationReport report;

  {
    CheckResult c;
    c.name = "transmission closed form vs integrated |T|^2";
    const int n = 50;
    const double lo = 0.3, hi = 1.4;
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double p_mu = lo + i * (hi - lo) / (n + 1);  // interior of (0.3, 1.4)
      const double closed = std::norm(transmission(p_mu * mu, bar));
      const double ode = oracle::transmission_ode(p_mu * mu, bar);
      worst = std::max(worst, std::abs(closed - ode));
    }
    c.detail = format_range(lo, hi, n, "momenta");
    c.measured = worst;
    c.limit = tol.transmission_abs;
    c.pass = worst < c.limit;
    report.checks.push_back(c);
  }

  {
    CheckResult c;
    c.name = "polar and modulus identities of the amplitude";
    const int n = 200;
    const double lo = 0.05, hi = 1.41;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double p_mu = lo + i * (hi - lo) / (n - 1);
      const double p = p_mu * mu;
      const std::complex<double> t = transmission(p, bar);
      const double omega = phase_unwrapped(p, bar);
      worst = std::max(worst,
                       std::abs(std::abs(t) * std::exp(std::complex<double>(0.0, omega)) - t));
      if (p_mu < 0.999) {  // below the top: sinh closed form for |T|^2
        const ModeParams mp = mode_params(p, bar);
        const double k0 = mp.k0, k1 = mp.k1.real();
        const double sh = std::sinh(k1 * bar.d);
        const double closed =
            4.0 * k0 * k0 * k1 * k1 /
            (4.0 * k0 * k0 * k1 * k1 + std::pow(k0 * k0 + k1 * k1, 2) * sh * sh);
        worst = std::max(worst, std::abs(std::norm(t) - closed));
      }
    }
    c.detail = format_range(lo, hi, n, "momenta");
    c.measured = worst;
    c.limit = tol.algebraic;
    c.pass = worst < c.limit;
    report.checks.push_back(c);
  }

  {
    CheckResult c;
    c.name = "delay analytic vs finite difference";
    const int n = 100;
    const double lo = 0.31, hi = 1.39;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double p = (lo + i * (hi - lo) / (n - 1)) * mu;
      const double analytic = delay_time(p, bar);
      const double fd = oracle::delay_fd(p, bar, grid);
      // absolute floor keeps the d = 0 case (both delays exactly zero) finite
      worst = std::max(worst, std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-12));
    }
    c.detail = format_range(lo, hi, n, "momenta");
    c.measured = worst;
    c.limit = tol.derivative_rel;
    c.pass = worst < c.limit;
    report.checks.push_back(c);
  }

  {
    CheckResult c;
    c.name = "probabilities vs momentum-grid evaluation";
    const int n = 17;
    const double lo = 0.5, hi = 1.3;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double q = lo + i * (hi - lo) / (n - 1);
      const PointReport model = evaluate_point(q, sweep);

      ScenarioSpec s = sweep.scenario_at(q);
      s.statistics = Statistics::Distinguishable;
      s.form = StateForm::ProductA;
      const double grid_prod = oracle::joint_transmission_grid(s, bar, grid);
      worst = std::max(worst, std::abs(*model.dis_a - grid_prod) / grid_prod);

      s.form = StateForm::Superposition;
      const double grid_sup = oracle::joint_transmission_grid(s, bar, grid);
      worst = std::max(worst, std::abs(*model.dis_sup - grid_sup) / grid_sup);
    }
    c.detail = format_range(lo, hi, n, "sweep points");
    c.measured = worst;
    c.limit = tol.grid_rel;
    c.pass = worst < c.limit;
    report.checks.push_back(c);
  }

  report.pass = true;
  for (const auto& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

}  // namespace twintunnel
