#include "twintunnel/packets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twintunnel {

namespace {

void require_equal_widths(const PacketSpec& a, const PacketSpec& b) {
  a.validate();
  b.validate();
  if (std::abs(a.width - b.width) > 1e-12 * a.width)
    throw std::invalid_argument("overlap: packets must share a single width P");
}

double gaussian_overlap(double pa, double pb, double width) {
  const double dp = pa - pb;
  return std::exp(-dp * dp / (2.0 * width * width));
}

}  // namespace

const char* packet_name(PacketId id) {
  switch (id) {
    case PacketId::Psi: return "psi";
    case PacketId::Phi: return "phi";
    case PacketId::PhiBar: return "phibar";
    case PacketId::Chi: return "chi";
  }
  return "?";
}

void PacketSpec::validate() const {
  if (!(p_central > 0.0)) throw std::invalid_argument("PacketSpec: central momentum must be positive");
  if (!(width > 0.0)) throw std::invalid_argument("PacketSpec: width must be positive");
}

double mode_amplitude(const PacketSpec& s, double p_star) {
  s.validate();
  const double dp = p_star - s.p_central;
  return std::pow(2.0 / std::numbers::pi, 0.25) / std::sqrt(s.width) *
         std::exp(-dp * dp / (s.width * s.width));
}

double initial_overlap(const PacketSpec& a, const PacketSpec& b) {
  require_equal_widths(a, b);
  return gaussian_overlap(a.p_central, b.p_central, a.width);
}

std::optional<double> transmitted_overlap(const PacketSpec& a, const PacketSpec& b,
                                          const BarrierSpec& bar) {
  require_equal_widths(a, b);
  if (bar.d == 0.0) return initial_overlap(a, b);
  const auto pe_a = effective_momentum(a.p_central, bar);
  const auto pe_b = effective_momentum(b.p_central, bar);
  if (!pe_a || !pe_b) return std::nullopt;
  return gaussian_overlap(*pe_a, *pe_b, a.width);
}

OverlapSet::OverlapSet() {
  for (auto& row : init_) row.fill(0.0);
  for (int i = 0; i < 4; ++i) init_[i][i] = 1.0;
  for (int i = 0; i < 4; ++i) trans_[i][i] = 1.0;
}

double OverlapSet::initial(PacketId x, PacketId y) const {
  return init_[static_cast<int>(x)][static_cast<int>(y)];
}

std::optional<double> OverlapSet::transmitted(PacketId x, PacketId y) const {
  return trans_[static_cast<int>(x)][static_cast<int>(y)];
}

void OverlapSet::set_initial(PacketId x, PacketId y, double v) {
  init_[static_cast<int>(x)][static_cast<int>(y)] = v;
  init_[static_cast<int>(y)][static_cast<int>(x)] = v;
}

void OverlapSet::set_transmitted(PacketId x, PacketId y, std::optional<double> v) {
  trans_[static_cast<int>(x)][static_cast<int>(y)] = v;
  trans_[static_cast<int>(y)][static_cast<int>(x)] = v;
}

OverlapSet overlap_matrix(const std::array<PacketSpec, 4>& packets, const BarrierSpec& bar) {
  bar.validate();
  std::array<std::optional<double>, 4> pe;
  for (int i = 0; i < 4; ++i) {
    packets[i].validate();
    if (bar.d > 0.0) pe[i] = effective_momentum(packets[i].p_central, bar);
  }

  OverlapSet out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const auto a = static_cast<PacketId>(i);
      const auto b = static_cast<PacketId>(j);
      const double width = packets[i].width;
      if (std::abs(width - packets[j].width) > 1e-12 * width)
        throw std::invalid_argument("overlap_matrix: packets must share a single width P");
      out.set_initial(a, b, gaussian_overlap(packets[i].p_central, packets[j].p_central, width));
      if (bar.d == 0.0) {
        out.set_transmitted(a, b, out.initial(a, b));
      } else if (pe[i] && pe[j]) {
        out.set_transmitted(a, b, gaussian_overlap(*pe[i], *pe[j], width));
      } else {
        out.set_transmitted(a, b, std::nullopt);
      }
    }
  }
  return out;
}

}  // namespace twintunnel
