#include "twintunnel/states.hpp"

#include <cmath>
#include <stdexcept>

namespace twintunnel {

namespace {

using Complex = std::complex<double>;

double exchange_sign(Statistics st) {
  switch (st) {
    case Statistics::Boson: return +1.0;
    case Statistics::Fermion: return -1.0;
    case Statistics::Distinguishable: break;
  }
  throw std::invalid_argument("exchange sign requested for distinguishable particles");
}

Complex term_amplitude_a(const std::array<ScatterResult, 4>& sc) {
  return sc[0].amplitude * sc[1].amplitude;  // T(p) T(q)
}

Complex term_amplitude_b(const std::array<ScatterResult, 4>& sc) {
  return sc[2].amplitude * sc[3].amplitude;  // T(pbar) T(qbar)
}

std::optional<double> inv_sqrt_if_positive(double x) {
  if (!(x > 0.0)) return std::nullopt;
  return 1.0 / std::sqrt(x);
}

}  // namespace

const char* statistics_name(Statistics s) {
  switch (s) {
    case Statistics::Distinguishable: return "distinguishable";
    case Statistics::Boson: return "boson";
    case Statistics::Fermion: return "fermion";
  }
  return "?";
}

const char* form_name(StateForm f) {
  switch (f) {
    case StateForm::ProductA: return "product_a";
    case StateForm::ProductB: return "product_b";
    case StateForm::Mixture: return "mixture";
    case StateForm::Superposition: return "superposition";
  }
  return "?";
}

void ScenarioSpec::validate() const {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-12)
    throw std::invalid_argument("ScenarioSpec: |a|^2 + |b|^2 must equal 1");
  const double width = packets[0].width;
  for (int i = 0; i < 4; ++i) {
    packets[i].validate();
    if (packets[i].label != static_cast<PacketId>(i))
      throw std::invalid_argument("ScenarioSpec: packet labels out of order");
    if (std::abs(packets[i].width - width) > 1e-12 * width)
      throw std::invalid_argument("ScenarioSpec: packets must share a single width P");
  }
}

double norm_inv2_distinguishable(const ScenarioSpec& s, const OverlapSet& ov) {
  const Complex cab = std::conj(s.a) * s.b;
  return 1.0 + 2.0 * std::real(cab * ov.initial(PacketId::Psi, PacketId::PhiBar) *
                               ov.initial(PacketId::Phi, PacketId::Chi));
}

double norm_inv2_identical(const ScenarioSpec& s, const OverlapSet& ov, Statistics st) {
  const double sg = exchange_sign(st);
  const double ov_a = ov.initial(PacketId::Psi, PacketId::Phi);
  const double ov_b = ov.initial(PacketId::PhiBar, PacketId::Chi);
  const Complex cab = std::conj(s.a) * s.b;
  const double cross = ov.initial(PacketId::Psi, PacketId::PhiBar) *
                           ov.initial(PacketId::Phi, PacketId::Chi) +
                       sg * ov.initial(PacketId::Psi, PacketId::Chi) *
                           ov.initial(PacketId::Phi, PacketId::PhiBar);
  return std::norm(s.a) * (2.0 + sg * 2.0 * ov_a * ov_a) +
         std::norm(s.b) * (2.0 + sg * 2.0 * ov_b * ov_b) + 4.0 * std::real(cab) * cross;
}

std::optional<double> norm_distinguishable(const ScenarioSpec& s, const OverlapSet& ov) {
  return inv_sqrt_if_positive(norm_inv2_distinguishable(s, ov));
}

IdenticalNorms norms_identical(const ScenarioSpec& s, const OverlapSet& ov,
                               double fermion_epsilon) {
  const double sg = exchange_sign(s.statistics);
  const double ov_a = ov.initial(PacketId::Psi, PacketId::Phi);
  const double ov_b = ov.initial(PacketId::PhiBar, PacketId::Chi);

  IdenticalNorms out;
  // A fermion term with coincident packets has zero norm; 1/sqrt(0) is the
  // Pauli-excluded 0/0 point and stays undefined.
  if (!(sg < 0.0) || 1.0 - ov_a * ov_a >= fermion_epsilon)
    out.Na = inv_sqrt_if_positive(2.0 + sg * 2.0 * ov_a * ov_a);
  if (!(sg < 0.0) || 1.0 - ov_b * ov_b >= fermion_epsilon)
    out.Nb = inv_sqrt_if_positive(2.0 + sg * 2.0 * ov_b * ov_b);
  out.calN = inv_sqrt_if_positive(norm_inv2_identical(s, ov, s.statistics));
  return out;
}

std::optional<double> norm_T_distinguishable(const ScenarioSpec& s, const OverlapSet& ov,
                                             const std::array<ScatterResult, 4>& sc) {
  const Complex tt_a = term_amplitude_a(sc);
  const Complex tt_b = term_amplitude_b(sc);
  double out = std::norm(s.a * tt_a) + std::norm(s.b * tt_b);
  const Complex cab = std::conj(s.a) * s.b;
  if (cab != Complex{0.0, 0.0}) {
    const auto o1 = ov.transmitted(PacketId::Psi, PacketId::PhiBar);
    const auto o2 = ov.transmitted(PacketId::Phi, PacketId::Chi);
    if (!o1 || !o2) return std::nullopt;
    out += 2.0 * std::real(cab * std::conj(tt_a) * tt_b) * (*o1) * (*o2);
  }
  return out;
}

std::optional<double> norm_T_identical(const ScenarioSpec& s, const OverlapSet& ov,
                                       const std::array<ScatterResult, 4>& sc, Statistics st) {
  const double sg = exchange_sign(st);
  const Complex tt_a = term_amplitude_a(sc);
  const Complex tt_b = term_amplitude_b(sc);

  double out = 0.0;
  if (std::norm(s.a) != 0.0) {
    const auto o = ov.transmitted(PacketId::Psi, PacketId::Phi);
    if (!o) return std::nullopt;
    out += std::norm(s.a * tt_a) * (2.0 + sg * 2.0 * (*o) * (*o));
  }
  if (std::norm(s.b) != 0.0) {
    const auto o = ov.transmitted(PacketId::PhiBar, PacketId::Chi);
    if (!o) return std::nullopt;
    out += std::norm(s.b * tt_b) * (2.0 + sg * 2.0 * (*o) * (*o));
  }
  const Complex cab = std::conj(s.a) * s.b;
  if (cab != Complex{0.0, 0.0}) {
    const auto o1 = ov.transmitted(PacketId::Psi, PacketId::PhiBar);
    const auto o2 = ov.transmitted(PacketId::Phi, PacketId::Chi);
    const auto o3 = ov.transmitted(PacketId::Psi, PacketId::Chi);
    const auto o4 = ov.transmitted(PacketId::Phi, PacketId::PhiBar);
    if (!o1 || !o2 || !o3 || !o4) return std::nullopt;
    out += 4.0 * std::real(cab * std::conj(tt_a) * tt_b) * ((*o1) * (*o2) + sg * (*o3) * (*o4));
  }
  return out;
}

NormSet norm_set(const ScenarioSpec& s, const OverlapSet& ov,
                 const std::array<ScatterResult, 4>& sc, double fermion_epsilon) {
  NormSet out;
  out.N = norm_distinguishable(s, ov);
  out.NT_inv2 = norm_T_distinguishable(s, ov, sc);
  if (s.statistics != Statistics::Distinguishable) {
    const IdenticalNorms in = norms_identical(s, ov, fermion_epsilon);
    out.Na = in.Na;
    out.Nb = in.Nb;
    out.calN = in.calN;
    out.calNT_inv2 = norm_T_identical(s, ov, sc, s.statistics);
  }
  return out;
}

}  // namespace twintunnel
