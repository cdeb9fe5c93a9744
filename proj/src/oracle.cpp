#include "twintunnel/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twintunnel::oracle {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

// One backward RK4 pass over [0, d] starting from a unit transmitted wave,
// returning (u, u') at x = 0.
Eigen::Vector2cd integrate_barrier(double k0, double c, double d, int steps) {
  const Complex edge = std::exp(kI * k0 * d);
  Eigen::Vector2cd y;
  y << edge, kI * k0 * edge;
  const double h = -d / steps;
  const auto rhs = [c](const Eigen::Vector2cd& v) {
    return Eigen::Vector2cd(v(1), c * v(0));
  };
  for (int i = 0; i < steps; ++i) {
    const Eigen::Vector2cd s1 = rhs(y);
    const Eigen::Vector2cd s2 = rhs(y + 0.5 * h * s1);
    const Eigen::Vector2cd s3 = rhs(y + 0.5 * h * s2);
    const Eigen::Vector2cd s4 = rhs(y + h * s3);
    y += (h / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
  }
  return y;
}

OdeResult coefficients_from_edge(const Eigen::Vector2cd& y, double k0) {
  // u(0) = A + B, u'(0) = i k0 (A - B) with unit transmitted amplitude
  const Complex A = 0.5 * (y(0) + y(1) / (kI * k0));
  const Complex B = 0.5 * (y(0) - y(1) / (kI * k0));
  OdeResult r;
  r.t2 = 1.0 / std::norm(A);
  r.r2 = std::norm(B) / std::norm(A);
  return r;
}

double wrap_angle(double x) { return std::remainder(x, 2.0 * std::numbers::pi); }

}  // namespace

void GridSpec::validate() const {
  if (points < 64) throw std::invalid_argument("GridSpec: points must be at least 64");
  if (!(span >= 5.0)) throw std::invalid_argument("GridSpec: span must be at least 5");
  if (!(energy_step > 0.0)) throw std::invalid_argument("GridSpec: energy_step must be positive");
}

double barrier_coefficient(double p, const BarrierSpec& b) {
  b.validate();
  if (!(p > 0.0)) throw std::domain_error("barrier_coefficient: momentum must be positive");
  const double E = p * p / (2.0 * b.m);
  return 2.0 * b.m * (b.V0 - E) / (b.hbar * b.hbar);
}

OdeResult scatter_ode(double p, const BarrierSpec& b) {
  b.validate();
  if (!(p > 0.0)) throw std::domain_error("scatter_ode: momentum must be positive");
  if (b.d == 0.0) return {1.0, 0.0};

  const double k0 = p / b.hbar;
  const double c = barrier_coefficient(p, b);

  int steps = 512;
  OdeResult prev = coefficients_from_edge(integrate_barrier(k0, c, b.d, steps), k0);
  for (int pass = 0; pass < 8; ++pass) {
    steps *= 2;
    const OdeResult cur = coefficients_from_edge(integrate_barrier(k0, c, b.d, steps), k0);
    if (std::abs(cur.t2 - prev.t2) <= 1e-8) return cur;
    prev = cur;
  }
  throw std::runtime_error("scatter_ode: step halving did not converge to 1e-8");
}

double transmission_ode(double p, const BarrierSpec& b) { return scatter_ode(p, b).t2; }

double delay_fd(double p, const BarrierSpec& b, const GridSpec& g) {
  g.validate();
  b.validate();
  if (!(p > 0.0)) throw std::domain_error("delay_fd: momentum must be positive");

  const double E = p * p / (2.0 * b.m);
  const auto phase_at = [&](double energy) {
    return std::arg(transmission(std::sqrt(2.0 * b.m * energy), b));
  };

  double dE = std::min(g.energy_step, 0.5 * E);  // keep E - dE positive
  const double phi0 = phase_at(E);
  for (int halving = 0; halving <= 20; ++halving) {
    const double lo = wrap_angle(phase_at(E - dE) - phi0);
    const double hi = wrap_angle(phase_at(E + dE) - phi0);
    // a wrapped step beyond pi/2 is too coarse to unwrap without aliasing
    if (std::abs(lo) > 0.5 * std::numbers::pi || std::abs(hi) > 0.5 * std::numbers::pi) {
      dE *= 0.5;
      continue;
    }
    return b.hbar * (hi - lo) / (2.0 * dE);
  }
  throw std::runtime_error("delay_fd: phase change per step stayed above pi/2 after 20 halvings");
}

namespace {

struct GridAxis {
  Eigen::ArrayXd x;   // momentum samples
  Eigen::VectorXd w;  // trapezoid weights
};

GridAxis build_axis(const std::array<PacketSpec, 4>& packets, bool term_a, bool term_b,
                    const GridSpec& g, int densify) {
  double lo = 1e300, hi = -1e300, width = packets[0].width;
  const auto consider = [&](const PacketSpec& s) {
    lo = std::min(lo, s.p_central);
    hi = std::max(hi, s.p_central);
  };
  if (term_a) {
    consider(packets[0]);
    consider(packets[1]);
  }
  if (term_b) {
    consider(packets[2]);
    consider(packets[3]);
  }
  lo = std::max(lo - g.span * width, 1e-12);  // modes need positive momentum
  hi += g.span * width;

  const double dx_target = 2.0 * g.span * width / (g.points * densify);
  const int n = static_cast<int>(std::ceil((hi - lo) / dx_target)) + 1;
  if (n > 20000) throw std::runtime_error("joint_transmission_grid: axis too large");

  GridAxis axis;
  axis.x = Eigen::ArrayXd::LinSpaced(n, lo, hi);
  const double dx = (hi - lo) / (n - 1);
  axis.w = Eigen::VectorXd::Constant(n, dx);
  axis.w(0) *= 0.5;
  axis.w(n - 1) *= 0.5;
  return axis;
}

Eigen::VectorXd packet_samples(const PacketSpec& s, const Eigen::ArrayXd& x) {
  const double norm = std::pow(2.0 / std::numbers::pi, 0.25) / std::sqrt(s.width);
  return (norm * (-((x - s.p_central) / s.width).square()).exp()).matrix();
}

// closed-form squared norm of the (un-normalized) initial state, used to
// verify grid resolution; exact for Gaussian packets
double expected_initial_norm(const ScenarioSpec& s, const BarrierSpec& b) {
  const OverlapSet ov = overlap_matrix(s.packets, b);
  switch (s.form) {
    case StateForm::ProductA: {
      if (s.statistics == Statistics::Distinguishable) return 1.0;
      const double o = ov.initial(PacketId::Psi, PacketId::Phi);
      return 2.0 + (s.statistics == Statistics::Boson ? 2.0 : -2.0) * o * o;
    }
    case StateForm::ProductB: {
      if (s.statistics == Statistics::Distinguishable) return 1.0;
      const double o = ov.initial(PacketId::PhiBar, PacketId::Chi);
      return 2.0 + (s.statistics == Statistics::Boson ? 2.0 : -2.0) * o * o;
    }
    case StateForm::Superposition:
      if (s.statistics == Statistics::Distinguishable) return norm_inv2_distinguishable(s, ov);
      return norm_inv2_identical(s, ov, s.statistics);
    case StateForm::Mixture: break;
  }
  throw std::logic_error("expected_initial_norm: mixture has no single amplitude");
}

double grid_probability(const ScenarioSpec& s, const BarrierSpec& b, const GridSpec& g) {
  const bool ide = s.statistics != Statistics::Distinguishable;
  const bool use_a = s.form != StateForm::ProductB;
  const bool use_b = s.form != StateForm::ProductA;
  const double expected = expected_initial_norm(s, b);
  if (std::abs(expected) < 1e-12)
    throw std::domain_error("joint_transmission_grid: initial state has zero norm");

  for (int densify = 1; densify <= 4; densify *= 2) {
    const GridAxis axis = build_axis(s.packets, use_a, use_b, g, densify);
    const int n = static_cast<int>(axis.x.size());

    Eigen::VectorXd t2(n);
    for (int i = 0; i < n; ++i) t2(i) = std::norm(transmission(axis.x(i), b));

    Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(n, n);
    if (use_a) {
      const Eigen::VectorXd u = packet_samples(s.packet(PacketId::Psi), axis.x);
      const Eigen::VectorXd v = packet_samples(s.packet(PacketId::Phi), axis.x);
      Eigen::MatrixXd term = u * v.transpose();
      if (ide)
        term += (s.statistics == Statistics::Boson ? 1.0 : -1.0) * (v * u.transpose()).eval();
      const Complex coeff = s.form == StateForm::Superposition ? s.a : Complex{1.0, 0.0};
      amp += coeff * term.cast<Complex>();
    }
    if (use_b) {
      const Eigen::VectorXd u = packet_samples(s.packet(PacketId::PhiBar), axis.x);
      const Eigen::VectorXd v = packet_samples(s.packet(PacketId::Chi), axis.x);
      Eigen::MatrixXd term = u * v.transpose();
      if (ide)
        term += (s.statistics == Statistics::Boson ? 1.0 : -1.0) * (v * u.transpose()).eval();
      const Complex coeff = s.form == StateForm::Superposition ? s.b : Complex{1.0, 0.0};
      amp += coeff * term.cast<Complex>();
    }

    const Eigen::MatrixXd abs2 = amp.cwiseAbs2();
    const double n0 = axis.w.transpose() * abs2 * axis.w;
    if (std::abs(n0 - expected) > 1e-6 * std::abs(expected)) continue;  // under-resolved

    const Eigen::VectorXd wt = axis.w.cwiseProduct(t2);
    const double nt = wt.transpose() * abs2 * wt;
    return nt / n0;
  }
  throw std::runtime_error("joint_transmission_grid: initial-state norm error above 1e-6");
}

}  // namespace

double joint_transmission_grid(const ScenarioSpec& s, const BarrierSpec& b, const GridSpec& g) {
  s.validate();
  b.validate();
  g.validate();
  if (s.form == StateForm::Mixture) {
    ScenarioSpec sa = s;
    sa.form = StateForm::ProductA;
    ScenarioSpec sb = s;
    sb.form = StateForm::ProductB;
    return std::norm(s.a) * grid_probability(sa, b, g) + std::norm(s.b) * grid_probability(sb, b, g);
  }
  return grid_probability(s, b, g);
}

}  // namespace twintunnel::oracle
