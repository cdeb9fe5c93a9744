#pragma once

#include <array>
#include <complex>
#include <optional>

#include "twintunnel/barrier.hpp"
#include "twintunnel/packets.hpp"

namespace twintunnel {

enum class Statistics { Distinguishable, Boson, Fermion };
enum class StateForm { ProductA, ProductB, Mixture, Superposition };

const char* statistics_name(Statistics s);
const char* form_name(StateForm f);

/// Tolerance below which 1 - |overlap|^2 counts as an exact fermion
/// coincidence (the Pauli-excluded 0/0 point).
constexpr double kFermionEpsilon = 1e-12;

/// A two-particle input configuration: superposition coefficients, the four
/// packets (term a pairs Psi with Phi, term b pairs PhiBar with Chi), the
/// exchange statistics and the state form under study.
struct ScenarioSpec {
  std::complex<double> a{1.0, 0.0};
  std::complex<double> b{0.0, 0.0};
  std::array<PacketSpec, 4> packets{};  // order: Psi, Phi, PhiBar, Chi
  Statistics statistics = Statistics::Distinguishable;
  StateForm form = StateForm::Superposition;

  const PacketSpec& packet(PacketId id) const { return packets[static_cast<int>(id)]; }

  /// Throws std::invalid_argument when |a|^2 + |b|^2 deviates from 1 by
  /// more than 1e-12, when packets are invalid or widths differ, or when
  /// packet labels do not match their slots.
  void validate() const;
};

/// Normalization constants of one scenario.  Each value may be undefined:
/// Na/Nb for a Pauli-excluded fermion term, N/calN when a radicand is not
/// positive, the transmitted brackets when a required transmitted overlap
/// is undefined.
struct NormSet {
  std::optional<double> N;            ///< distinguishable superposition
  std::optional<double> Na, Nb;       ///< single identical-particle terms
  std::optional<double> calN;         ///< identical superposition
  std::optional<double> NT_inv2;      ///< transmitted bracket, distinguishable
  std::optional<double> calNT_inv2;   ///< transmitted bracket, identical
};

struct IdenticalNorms {
  std::optional<double> Na, Nb, calN;
};

// Bracket (inverse-square) forms.  These are what the probability ratios
// consume; the N's are their reciprocal square roots where positive.

/// 1 + 2 Re(a* b <psi|phibar><phi|chi>).
double norm_inv2_distinguishable(const ScenarioSpec& s, const OverlapSet& ov);

/// |a|^2 (2 +- 2|<psi|phi>|^2) + |b|^2 (2 +- 2|<phibar|chi>|^2)
///   + 4 Re(a* b {<psi|phibar><phi|chi> +- <psi|chi><phi|phibar>}),
/// upper sign bosons, lower fermions.
double norm_inv2_identical(const ScenarioSpec& s, const OverlapSet& ov, Statistics st);

std::optional<double> norm_distinguishable(const ScenarioSpec& s, const OverlapSet& ov);

/// Requires s.statistics in {Boson, Fermion}.
IdenticalNorms norms_identical(const ScenarioSpec& s, const OverlapSet& ov,
                               double fermion_epsilon = kFermionEpsilon);

/// Transmitted bracket |a T(p)T(q)|^2 + |b T(pbar)T(qbar)|^2 + interference
/// term with the complex amplitudes and transmitted overlaps.
std::optional<double> norm_T_distinguishable(const ScenarioSpec& s, const OverlapSet& ov,
                                             const std::array<ScatterResult, 4>& sc);

/// Transmitted bracket of the identical-particle superposition, with the
/// per-term exchange factors and both cross-term orderings.
std::optional<double> norm_T_identical(const ScenarioSpec& s, const OverlapSet& ov,
                                       const std::array<ScatterResult, 4>& sc, Statistics st);

/// All of the above for one scenario (identical-particle entries use
/// s.statistics; empty for Distinguishable).
NormSet norm_set(const ScenarioSpec& s, const OverlapSet& ov,
                 const std::array<ScatterResult, 4>& sc,
                 double fermion_epsilon = kFermionEpsilon);

}  // namespace twintunnel
