#include <doctest.h>

#include <cmath>
#include <vector>

#include "test_util.hpp"
#include "twintunnel/probabilities.hpp"
#include "twintunnel/states.hpp"

using namespace twintunnel;

namespace {

const BarrierSpec kBar{};
const double kMu = momentum_unit(kBar);
const double kInvSqrt2 = 0.7071067811865476;

ScenarioSpec scenario(double a, double b, double q_mu = 0.95,
                      Statistics st = Statistics::Distinguishable) {
  SweepConfig cfg;
  ScenarioSpec s = cfg.scenario_at(q_mu);
  s.a = a;
  s.b = b;
  s.statistics = st;
  return s;
}

OverlapSet uniform_overlaps(double value) {
  OverlapSet ov;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      ov.set_initial(static_cast<PacketId>(i), static_cast<PacketId>(j), value);
      ov.set_transmitted(static_cast<PacketId>(i), static_cast<PacketId>(j), value);
    }
  return ov;
}

}  // namespace

TEST_CASE("scenario validation") {
  ScenarioSpec s = scenario(kInvSqrt2, kInvSqrt2);
  CHECK_NOTHROW(s.validate());
  s.a = 0.9;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = scenario(0.6, 0.8);
  std::swap(s.packets[0], s.packets[1]);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("distinguishable normalization") {
  const ScenarioSpec s = scenario(kInvSqrt2, kInvSqrt2);

  SUBCASE("orthogonal cross overlaps give N = 1") {
    OverlapSet ov = uniform_overlaps(0.5);
    ov.set_initial(PacketId::Psi, PacketId::PhiBar, 0.0);
    CHECK(*norm_distinguishable(s, ov) == 1.0);
  }

  SUBCASE("single-term state gives N = 1") {
    CHECK(*norm_distinguishable(scenario(1.0, 0.0), uniform_overlaps(0.5)) == 1.0);
  }

  SUBCASE("closed form against a discretized two-term state") {
    // <psi|phibar> = exp(-2), <phi|chi> = exp(-1/2) at the default momenta
    const ScenarioSpec sd = scenario(kInvSqrt2, kInvSqrt2, 0.95);
    const OverlapSet ov = overlap_matrix(sd.packets, kBar);
    CHECK(ov.initial(PacketId::Psi, PacketId::PhiBar) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(ov.initial(PacketId::Phi, PacketId::Chi) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-14));

    const double expected = 1.0 / std::sqrt(1.0 + std::exp(-2.5));
    CHECK(*norm_distinguishable(sd, ov) == doctest::Approx(expected).epsilon(1e-14));

    // independent route: normalize a psi x phi + b phibar x chi on a grid
    const double width = sd.packets[0].width;
    const double lo = sd.packets[0].p_central - 9.0 * width;
    const double hi = sd.packets[2].p_central + 9.0 * width;
    const int n = 1200;
    const double dx = (hi - lo) / (n - 1);
    std::vector<double> fp(n), fq(n), fpb(n), fqb(n);
    for (int i = 0; i < n; ++i) {
      const double x = lo + i * dx;
      fp[i] = mode_amplitude(sd.packet(PacketId::Psi), x);
      fq[i] = mode_amplitude(sd.packet(PacketId::Phi), x);
      fpb[i] = mode_amplitude(sd.packet(PacketId::PhiBar), x);
      fqb[i] = mode_amplitude(sd.packet(PacketId::Chi), x);
    }
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double amp = kInvSqrt2 * fp[i] * fq[j] + kInvSqrt2 * fpb[i] * fqb[j];
        norm2 += amp * amp;
      }
    norm2 *= dx * dx;
    CHECK(1.0 / std::sqrt(norm2) == doctest::Approx(expected).epsilon(1e-7));
  }
}

TEST_CASE("identical-particle normalizations") {
  SUBCASE("vanishing overlaps, bosons") {
    const ScenarioSpec s = scenario(kInvSqrt2, kInvSqrt2, 0.95, Statistics::Boson);
    const IdenticalNorms n = norms_identical(s, uniform_overlaps(0.0));
    CHECK(*n.Na == doctest::Approx(kInvSqrt2).epsilon(1e-14));
    CHECK(*n.Nb == doctest::Approx(kInvSqrt2).epsilon(1e-14));
    CHECK(*n.calN == doctest::Approx(kInvSqrt2).epsilon(1e-14));
  }

  SUBCASE("fermion term with coincident packets is Pauli-excluded") {
    // q = p: <psi|phi> = 1, term a has zero norm but the superposition does not
    const ScenarioSpec s = scenario(kInvSqrt2, kInvSqrt2, 0.95, Statistics::Fermion);
    const OverlapSet ov = overlap_matrix(s.packets, kBar);
    CHECK(ov.initial(PacketId::Psi, PacketId::Phi) == 1.0);
    const IdenticalNorms n = norms_identical(s, ov);
    CHECK(!n.Na.has_value());
    REQUIRE(n.calN.has_value());
    CHECK(*n.calN > 0.0);
  }

  SUBCASE("boson term with coincident packets") {
    const ScenarioSpec s = scenario(kInvSqrt2, kInvSqrt2, 0.95, Statistics::Boson);
    OverlapSet ov = uniform_overlaps(0.0);
    ov.set_initial(PacketId::Psi, PacketId::Phi, 1.0);
    CHECK(*norms_identical(s, ov).Na == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("transmitted normalizations") {
  const ScenarioSpec s = scenario(kInvSqrt2, kInvSqrt2, 1.0);
  const EvalContext ctx = make_context(s, kBar);

  SUBCASE("single term reduces to the squared amplitude product") {
    const ScenarioSpec sa = scenario(1.0, 0.0, 1.0);
    const auto nt = norm_T_distinguishable(sa, ctx.overlaps, ctx.scatter);
    CHECK(*nt == doctest::Approx(ctx.term_magnitude2(Term::A)).epsilon(1e-14));
  }

  SUBCASE("orthogonal transmitted overlaps drop the interference term") {
    OverlapSet ov = ctx.overlaps;
    ov.set_transmitted(PacketId::Psi, PacketId::PhiBar, 0.0);
    const auto nt = norm_T_distinguishable(s, ov, ctx.scatter);
    const double expected = 0.5 * ctx.term_magnitude2(Term::A) + 0.5 * ctx.term_magnitude2(Term::B);
    CHECK(*nt == doctest::Approx(expected).epsilon(1e-14));
  }

  SUBCASE("identical bracket with vanishing transmitted overlaps") {
    OverlapSet ov = uniform_overlaps(0.0);
    const auto nt = norm_T_identical(s, ov, ctx.scatter, Statistics::Boson);
    const double expected = 2.0 * 0.5 * ctx.term_magnitude2(Term::A) +
                            2.0 * 0.5 * ctx.term_magnitude2(Term::B);
    CHECK(*nt == doctest::Approx(expected).epsilon(1e-14));
  }

  SUBCASE("undefined transmitted overlap poisons the bracket") {
    OverlapSet ov = ctx.overlaps;
    ov.set_transmitted(PacketId::Phi, PacketId::Chi, std::nullopt);
    CHECK(!norm_T_distinguishable(s, ov, ctx.scatter).has_value());
    // ...unless its coefficient is zero
    const ScenarioSpec sa = scenario(1.0, 0.0, 1.0);
    CHECK(norm_T_distinguishable(sa, ov, ctx.scatter).has_value());
  }

  SUBCASE("golden brackets at q = 1.0") {
    const auto g = testutil::load_golden("norms_q100.txt");
    const auto nt = norm_T_distinguishable(s, ctx.overlaps, ctx.scatter);
    CHECK(*nt == doctest::Approx(testutil::golden(g, "NT_inv2")).epsilon(1e-12));
    CHECK(*norm_T_identical(s, ctx.overlaps, ctx.scatter, Statistics::Boson) ==
          doctest::Approx(testutil::golden(g, "calNT_inv2_boson")).epsilon(1e-12));
    CHECK(*norm_T_identical(s, ctx.overlaps, ctx.scatter, Statistics::Fermion) ==
          doctest::Approx(testutil::golden(g, "calNT_inv2_fermion")).epsilon(1e-12));
    CHECK(*norm_distinguishable(s, ctx.overlaps) ==
          doctest::Approx(testutil::golden(g, "N")).epsilon(1e-12));
    CHECK(norm_inv2_identical(s, ctx.overlaps, Statistics::Boson) ==
          doctest::Approx(testutil::golden(g, "calN_inv2_boson")).epsilon(1e-12));
    CHECK(norm_inv2_identical(s, ctx.overlaps, Statistics::Fermion) ==
          doctest::Approx(testutil::golden(g, "calN_inv2_fermion")).epsilon(1e-12));
  }
}

TEST_CASE("normalization properties") {
  SUBCASE("exchange relabeling (psi<->phi, phibar<->chi) is a symmetry") {
    ScenarioSpec s = scenario(0.6, 0.8, 0.9, Statistics::Fermion);
    ScenarioSpec swapped = s;
    std::swap(swapped.packets[0].p_central, swapped.packets[1].p_central);
    std::swap(swapped.packets[2].p_central, swapped.packets[3].p_central);
    const EvalContext c1 = make_context(s, kBar);
    const EvalContext c2 = make_context(swapped, kBar);
    for (Statistics st : {Statistics::Boson, Statistics::Fermion}) {
      CHECK(norm_inv2_identical(s, c1.overlaps, st) ==
            doctest::Approx(norm_inv2_identical(swapped, c2.overlaps, st)).epsilon(1e-12));
      CHECK(*norm_T_identical(s, c1.overlaps, c1.scatter, st) ==
            doctest::Approx(*norm_T_identical(swapped, c2.overlaps, c2.scatter, st))
                .epsilon(1e-12));
    }
  }

  SUBCASE("boson bracket dominates the fermion bracket") {
    for (double q : {0.5, 0.8, 0.95, 1.0, 1.2}) {
      const ScenarioSpec s = scenario(kInvSqrt2, kInvSqrt2, q);
      const OverlapSet ov = overlap_matrix(s.packets, kBar);
      CHECK(norm_inv2_identical(s, ov, Statistics::Boson) >=
            norm_inv2_identical(s, ov, Statistics::Fermion));
    }
  }

  SUBCASE("zero overlaps reduce identical to distinguishable") {
    const ScenarioSpec s = scenario(0.6, 0.8);
    const OverlapSet ov = uniform_overlaps(0.0);
    const double n_inv2 = norm_inv2_distinguishable(s, ov);
    for (Statistics st : {Statistics::Boson, Statistics::Fermion})
      CHECK(std::abs(norm_inv2_identical(s, ov, st) / 2.0 - n_inv2) < 1e-10);
  }
}
