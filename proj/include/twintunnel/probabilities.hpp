#pragma once

#include <array>
#include <optional>

#include "twintunnel/barrier.hpp"
#include "twintunnel/packets.hpp"
#include "twintunnel/states.hpp"

namespace twintunnel {

/// Which product term of the superposition: A pairs Psi/Phi, B PhiBar/Chi.
enum class Term { A, B };

/// Per-point evaluation state shared by all six probabilities: the four
/// central-mode scatter results and the twelve overlaps.
struct EvalContext {
  ScenarioSpec scenario;
  BarrierSpec barrier;
  std::array<ScatterResult, 4> scatter;  // indexed by PacketId
  OverlapSet overlaps;
  double fermion_epsilon = kFermionEpsilon;

  std::complex<double> term_amplitude(Term t) const;
  double term_magnitude2(Term t) const;
};

EvalContext make_context(const ScenarioSpec& s, const BarrierSpec& b,
                         double fermion_epsilon = kFermionEpsilon);

/// One evaluated double-transmission probability.  `value` is empty at the
/// Pauli-excluded fermion points and wherever a required transmitted
/// overlap or normalization is undefined; undefinedness poisons exactly the
/// probabilities that reference the missing quantity.
struct ProbabilityReport {
  Statistics statistics = Statistics::Distinguishable;
  StateForm form = StateForm::ProductA;
  std::optional<double> value;
  double t2_a = 0.0;                    ///< |T(p) T(q)|^2
  double t2_b = 0.0;                    ///< |T(pbar) T(qbar)|^2
  std::optional<double> norm_inv2;      ///< initial bracket entering a ratio
  std::optional<double> norm_T_inv2;    ///< transmitted bracket
};

ProbabilityReport p_dis_product(Term t, const EvalContext& ctx);
ProbabilityReport p_dis_mixture(const EvalContext& ctx);
ProbabilityReport p_dis_superposition(const EvalContext& ctx);

/// Exchange ratio (1 +- |<..T|..T>|^2) / (1 +- |<..|..>|^2) times the
/// term's |T T|^2; undefined for a fermion term within fermion_epsilon of
/// coincidence.  st must be Boson or Fermion.
ProbabilityReport p_ide_product(Term t, Statistics st, const EvalContext& ctx);
ProbabilityReport p_ide_mixture(Statistics st, const EvalContext& ctx);
ProbabilityReport p_ide_superposition(Statistics st, const EvalContext& ctx);

}  // namespace twintunnel
