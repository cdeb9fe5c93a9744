#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twintunnel/probabilities.hpp"

namespace twintunnel {

/// When steps is a multiple of this count (with the default q range), the
/// grid contains q = p = 0.95 m.u. exactly, which makes the Pauli gap of
/// the fermion curves land on a grid point.  The figure presets use 1390.
inline constexpr int kStepsBaseCount = 139;

/// Momentum-sweep configuration.  Momenta are in m.u. = sqrt(2 m V0),
/// lengths in l.u. = hbar / sqrt(m V0); the defaults are the reference
/// parameter point (p = 0.95, pbar = 1.05, qbar = 1.00, P = 0.05 m.u.,
/// d = 0.7 l.u., a = 1/sqrt(2)).
struct SweepConfig {
  double q_min = 0.01;
  double q_max = 1.40;
  int steps = 1000;  ///< number of grid intervals; rows = steps + 1

  double p = 0.95;
  double pbar = 1.05;
  double qbar = 1.00;
  double big_p = 0.05;
  double d = 0.7;
  double a = 0.7071067811865476;  // 1/sqrt(2)

  std::optional<Statistics> statistics;  ///< restrict output columns
  std::optional<StateForm> form;         ///< restrict output columns
  int threads = 0;                       ///< 0 = hardware concurrency
  double fermion_epsilon = kFermionEpsilon;

  /// Throws std::invalid_argument on violated ranges
  /// (0 < q_min < q_max < sqrt(2), steps >= 1, |a| <= 1, momenta > 0, ...).
  void validate() const;

  BarrierSpec barrier() const;
  ScenarioSpec scenario_at(double q_mu) const;
};

/// All probabilities of one sweep point; empty optionals are undefined
/// (Pauli-excluded or missing effective momentum).
struct PointReport {
  double q = 0.0;  // m.u.
  std::optional<double> dis_a, dis_b, dis_mix, dis_sup;
  std::optional<double> ide_a_boson, ide_b_boson, ide_mix_boson, ide_sup_boson;
  std::optional<double> ide_a_fermion, ide_b_fermion, ide_mix_fermion, ide_sup_fermion;
};

PointReport evaluate_point(double q_mu, const SweepConfig& cfg);

/// The stable CSV column names, in output order.
const std::vector<std::string>& probability_columns();

std::optional<double> column_value(const PointReport& r, std::string_view column);

/// Column subset for the given filters; empty filters select everything.
std::vector<std::string> select_columns(std::optional<Statistics> statistics,
                                        std::optional<StateForm> form);

struct SweepTable {
  std::vector<std::string> columns;  // leading "q"
  std::vector<std::vector<std::optional<double>>> rows;
};

/// One row per grid point, deterministic and independent of the thread
/// count; undefined values stay empty.
SweepTable run_sweep(const SweepConfig& cfg, const std::vector<std::string>& columns);

/// Comma-separated, LF line endings, 12 significant digits, empty cell for
/// undefined.
std::string to_csv(const SweepTable& table);
SweepTable parse_csv(std::istream& in);

Statistics statistics_from_string(std::string_view s);
StateForm form_from_string(std::string_view s);

struct Preset {
  std::string name;
  std::string description;
  std::vector<std::string> columns;
  int steps = 10 * kStepsBaseCount;
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

}  // namespace twintunnel
