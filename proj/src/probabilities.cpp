#include "twintunnel/probabilities.hpp"

#include <cmath>
#include <stdexcept>

namespace twintunnel {

namespace {

std::pair<PacketId, PacketId> term_pair(Term t) {
  return t == Term::A ? std::pair{PacketId::Psi, PacketId::Phi}
                      : std::pair{PacketId::PhiBar, PacketId::Chi};
}

double term_weight(const ScenarioSpec& s, Term t) {
  return t == Term::A ? std::norm(s.a) : std::norm(s.b);
}

double exchange_sign(Statistics st) {
  if (st == Statistics::Boson) return +1.0;
  if (st == Statistics::Fermion) return -1.0;
  throw std::invalid_argument("identical-particle probability needs Boson or Fermion");
}

ProbabilityReport base_report(Statistics st, StateForm f, const EvalContext& ctx) {
  ProbabilityReport r;
  r.statistics = st;
  r.form = f;
  r.t2_a = ctx.term_magnitude2(Term::A);
  r.t2_b = ctx.term_magnitude2(Term::B);
  return r;
}

}  // namespace

std::complex<double> EvalContext::term_amplitude(Term t) const {
  const auto [x, y] = term_pair(t);
  return scatter[static_cast<int>(x)].amplitude * scatter[static_cast<int>(y)].amplitude;
}

double EvalContext::term_magnitude2(Term t) const { return std::norm(term_amplitude(t)); }

EvalContext make_context(const ScenarioSpec& s, const BarrierSpec& b, double fermion_epsilon) {
  s.validate();
  b.validate();
  EvalContext ctx;
  ctx.scenario = s;
  ctx.barrier = b;
  for (int i = 0; i < 4; ++i) ctx.scatter[i] = scatter(s.packets[i].p_central, b);
  ctx.overlaps = overlap_matrix(s.packets, b);
  ctx.fermion_epsilon = fermion_epsilon;
  return ctx;
}

ProbabilityReport p_dis_product(Term t, const EvalContext& ctx) {
  auto r = base_report(Statistics::Distinguishable,
                       t == Term::A ? StateForm::ProductA : StateForm::ProductB, ctx);
  r.value = ctx.term_magnitude2(t);
  return r;
}

ProbabilityReport p_dis_mixture(const EvalContext& ctx) {
  auto r = base_report(Statistics::Distinguishable, StateForm::Mixture, ctx);
  r.value = std::norm(ctx.scenario.a) * r.t2_a + std::norm(ctx.scenario.b) * r.t2_b;
  return r;
}

ProbabilityReport p_dis_superposition(const EvalContext& ctx) {
  auto r = base_report(Statistics::Distinguishable, StateForm::Superposition, ctx);
  const double n_inv2 = norm_inv2_distinguishable(ctx.scenario, ctx.overlaps);
  const auto nt_inv2 = norm_T_distinguishable(ctx.scenario, ctx.overlaps, ctx.scatter);
  r.norm_inv2 = n_inv2;
  r.norm_T_inv2 = nt_inv2;
  // ratio of the two brackets, N^2 N_T^{-2}, with no intermediate roots
  if (nt_inv2 && n_inv2 > 0.0) r.value = *nt_inv2 / n_inv2;
  return r;
}

ProbabilityReport p_ide_product(Term t, Statistics st, const EvalContext& ctx) {
  const double sg = exchange_sign(st);
  auto r = base_report(st, t == Term::A ? StateForm::ProductA : StateForm::ProductB, ctx);
  const auto [x, y] = term_pair(t);
  const double ov0 = ctx.overlaps.initial(x, y);
  const double den = 1.0 + sg * ov0 * ov0;
  r.norm_inv2 = den;
  // Pauli exclusion: at coincidence the ratio is 0/0 and stays undefined.
  if (sg < 0.0 && 1.0 - ov0 * ov0 < ctx.fermion_epsilon) return r;
  const auto ovT = ctx.overlaps.transmitted(x, y);
  if (!ovT) return r;
  const double num = 1.0 + sg * (*ovT) * (*ovT);
  r.norm_T_inv2 = num;
  r.value = num / den * ctx.term_magnitude2(t);
  return r;
}

ProbabilityReport p_ide_mixture(Statistics st, const EvalContext& ctx) {
  auto r = base_report(st, StateForm::Mixture, ctx);
  double sum = 0.0;
  for (const Term t : {Term::A, Term::B}) {
    const double w = term_weight(ctx.scenario, t);
    if (w == 0.0) continue;  // zero-weight undefined terms do not poison the sum
    const auto part = p_ide_product(t, st, ctx);
    if (!part.value) return r;
    sum += w * (*part.value);
  }
  r.value = sum;
  return r;
}

ProbabilityReport p_ide_superposition(Statistics st, const EvalContext& ctx) {
  auto r = base_report(st, StateForm::Superposition, ctx);
  const double n_inv2 = norm_inv2_identical(ctx.scenario, ctx.overlaps, st);
  const auto nt_inv2 = norm_T_identical(ctx.scenario, ctx.overlaps, ctx.scatter, st);
  r.norm_inv2 = n_inv2;
  r.norm_T_inv2 = nt_inv2;
  if (nt_inv2 && n_inv2 > 0.0) r.value = *nt_inv2 / n_inv2;
  return r;
}

}  // namespace twintunnel
