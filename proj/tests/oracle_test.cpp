#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "twintunnel/oracle.hpp"
#include "twintunnel/probabilities.hpp"
#include "twintunnel/sweep.hpp"

using namespace twintunnel;

namespace {

const BarrierSpec kBar{};
const double kMu = momentum_unit(kBar);

template <typename F>
double simpson(F f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double acc = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("grid spec validation") {
  oracle::GridSpec g;
  CHECK_NOTHROW(g.validate());
  g.points = 32;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = {};
  g.span = 2.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = {};
  g.energy_step = 0.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("stationary integration of the transmission") {
  SUBCASE("no barrier") {
    BarrierSpec free = kBar;
    free.d = 0.0;
    CHECK(oracle::transmission_ode(1.0, free) == 1.0);
  }

  SUBCASE("symmetric point") {
    const double expected = 1.0 / (std::cosh(0.7) * std::cosh(0.7));
    CHECK(std::abs(oracle::transmission_ode(1.0, kBar) - expected) < 1e-6);
  }

  SUBCASE("closed form and integration agree over the sweep range") {
    double worst = 0.0, worst_flux = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double p = (0.3 + i * 1.1 / 51.0) * kMu;
      const oracle::OdeResult ode = oracle::scatter_ode(p, kBar);
      worst = std::max(worst, std::abs(std::norm(transmission(p, kBar)) - ode.t2));
      worst_flux = std::max(worst_flux, std::abs(ode.t2 + ode.r2 - 1.0));
    }
    CHECK(worst < 1e-6);
    CHECK(worst_flux < 1e-8);  // flux conservation
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(oracle::transmission_ode(0.0, kBar), std::domain_error);
  }
}

TEST_CASE("finite-difference delay") {
  const oracle::GridSpec g{};

  SUBCASE("no barrier, no delay") {
    BarrierSpec free = kBar;
    free.d = 0.0;
    CHECK(std::abs(oracle::delay_fd(1.0, free, g)) < 1e-9);
  }

  SUBCASE("agrees with the analytic derivative") {
    for (double p_mu : {0.5, 0.95, 1.0, 1.05, 1.3}) {
      const double p = p_mu * kMu;
      const double analytic = delay_time(p, kBar);
      CHECK(std::abs(oracle::delay_fd(p, kBar, g) - analytic) / std::abs(analytic) < 1e-5);
    }
  }

  SUBCASE("second-order convergence under step halving") {
    const double p = 0.95 * kMu;
    const double analytic = delay_time(p, kBar);
    double err[3];
    double step = 4e-3;
    for (int i = 0; i < 3; ++i, step *= 0.5) {
      oracle::GridSpec coarse = g;
      coarse.energy_step = step;
      err[i] = std::abs(oracle::delay_fd(p, kBar, coarse) - analytic);
    }
    CHECK(err[0] / err[1] > 3.5);
    CHECK(err[0] / err[1] < 4.5);
    CHECK(err[1] / err[2] > 3.5);
    CHECK(err[1] / err[2] < 4.5);
  }
}

TEST_CASE("momentum-grid double transmission") {
  const oracle::GridSpec g{};
  SweepConfig cfg;

  SUBCASE("product state with no barrier") {
    SweepConfig free = cfg;
    free.d = 0.0;
    ScenarioSpec s = free.scenario_at(0.8);
    s.form = StateForm::ProductA;
    CHECK(oracle::joint_transmission_grid(s, free.barrier(), g) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("product state factorizes into one-particle quadratures") {
    ScenarioSpec s = cfg.scenario_at(1.0);
    s.form = StateForm::ProductA;
    const double grid = oracle::joint_transmission_grid(s, kBar, g);

    const auto packet_t2 = [&](const PacketSpec& ps) {
      return simpson(
          [&](double x) {
            const double f = mode_amplitude(ps, x);
            return f * f * std::norm(transmission(x, kBar));
          },
          ps.p_central - 8.0 * ps.width, ps.p_central + 8.0 * ps.width, 2048);
    };
    const double expected =
        packet_t2(s.packet(PacketId::Psi)) * packet_t2(s.packet(PacketId::Phi));
    CHECK(grid == doctest::Approx(expected).epsilon(1e-8));

    // the sharp-peak model agrees to the documented tolerance
    CHECK(std::norm(transmission(0.95 * kMu, kBar)) * std::norm(transmission(1.0 * kMu, kBar)) ==
          doctest::Approx(grid).epsilon(0.05));
  }

  SUBCASE("grid refinement is converged") {
    ScenarioSpec s = cfg.scenario_at(1.0);
    s.form = StateForm::Superposition;
    const double coarse = oracle::joint_transmission_grid(s, kBar, g);
    oracle::GridSpec fine = g;
    fine.points = 1024;
    CHECK(std::abs(oracle::joint_transmission_grid(s, kBar, fine) - coarse) < 1e-6);
  }

  SUBCASE("mixture is the weighted sum of the product terms") {
    ScenarioSpec s = cfg.scenario_at(0.9);
    s.form = StateForm::Mixture;
    const double mix = oracle::joint_transmission_grid(s, kBar, g);
    ScenarioSpec sa = s, sb = s;
    sa.form = StateForm::ProductA;
    sb.form = StateForm::ProductB;
    const double expected = 0.5 * oracle::joint_transmission_grid(sa, kBar, g) +
                            0.5 * oracle::joint_transmission_grid(sb, kBar, g);
    CHECK(mix == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("model probabilities track the grid over the comparison window") {
    for (double q : {0.5, 0.7, 0.9, 1.0, 1.1, 1.3}) {
      const PointReport model = evaluate_point(q, cfg);
      ScenarioSpec s = cfg.scenario_at(q);
      s.form = StateForm::Superposition;
      const double grid_sup = oracle::joint_transmission_grid(s, kBar, g);
      CHECK(*model.dis_sup == doctest::Approx(grid_sup).epsilon(0.05));

      s.statistics = Statistics::Boson;
      CHECK(*model.ide_sup_boson ==
            doctest::Approx(oracle::joint_transmission_grid(s, kBar, g)).epsilon(0.05));
      s.statistics = Statistics::Fermion;
      CHECK(*model.ide_sup_fermion ==
            doctest::Approx(oracle::joint_transmission_grid(s, kBar, g)).epsilon(0.05));
    }
  }

  SUBCASE("Pauli-excluded product state has no probability") {
    ScenarioSpec s = cfg.scenario_at(0.95);  // q = p
    s.statistics = Statistics::Fermion;
    s.form = StateForm::ProductA;
    CHECK_THROWS_AS(oracle::joint_transmission_grid(s, kBar, g), std::domain_error);
  }
}
