#pragma once

#include <array>
#include <optional>

#include "twintunnel/barrier.hpp"

namespace twintunnel {

/// The four packet roles of a two-particle scenario.  The first term pairs
/// Psi with Phi, the second pairs PhiBar with Chi.
enum class PacketId { Psi = 0, Phi = 1, PhiBar = 2, Chi = 3 };

constexpr std::array<PacketId, 4> kPacketIds{PacketId::Psi, PacketId::Phi, PacketId::PhiBar,
                                             PacketId::Chi};

const char* packet_name(PacketId id);

/// Gaussian momentum-space packet with mode amplitude
///   f(p*) = (2/pi)^{1/4} P^{-1/2} exp(-(p* - p)^2 / P^2),
/// normalized so that the integral of |f|^2 over p* is one.
struct PacketSpec {
  double p_central = 0.0;  ///< central momentum p, > 0 (base units)
  double width = 0.0;      ///< dispersion parameter P, > 0 (base units)
  PacketId label = PacketId::Psi;

  void validate() const;
};

/// f(p*) for this packet.
double mode_amplitude(const PacketSpec& s, double p_star);

/// <a|b> = exp(-(p_a - p_b)^2 / (2 P^2)).  The closed form assumes a single
/// shared width; mismatched widths throw std::invalid_argument.
double initial_overlap(const PacketSpec& a, const PacketSpec& b);

/// Overlap of the transmitted packets under the effective-momentum model,
/// exp(-(p_e(a) - p_e(b))^2 / (2 P^2)).  Empty when either effective
/// momentum is undefined.  For d = 0 the barrier acts as the identity and
/// the initial overlap is returned.
std::optional<double> transmitted_overlap(const PacketSpec& a, const PacketSpec& b,
                                          const BarrierSpec& bar);

/// The six initial and six transmitted pairwise overlaps of a scenario's
/// packets, computed once per sweep point.
class OverlapSet {
 public:
  OverlapSet();

  double initial(PacketId x, PacketId y) const;
  std::optional<double> transmitted(PacketId x, PacketId y) const;

  void set_initial(PacketId x, PacketId y, double v);
  void set_transmitted(PacketId x, PacketId y, std::optional<double> v);

 private:
  std::array<std::array<double, 4>, 4> init_;
  std::array<std::array<std::optional<double>, 4>, 4> trans_;
};

OverlapSet overlap_matrix(const std::array<PacketSpec, 4>& packets, const BarrierSpec& bar);

}  // namespace twintunnel
