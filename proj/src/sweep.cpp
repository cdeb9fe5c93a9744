#include "twintunnel/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace twintunnel {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(1, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string format_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void SweepConfig::validate() const {
  if (!(q_min > 0.0 && q_min < q_max && q_max < kSqrt2))
    throw std::invalid_argument("sweep: need 0 < q_min < q_max < sqrt(2) m.u.");
  if (steps < 1) throw std::invalid_argument("sweep: steps must be at least 1");
  if (!(p > 0.0 && pbar > 0.0 && qbar > 0.0))
    throw std::invalid_argument("sweep: central momenta must be positive");
  if (!(big_p > 0.0)) throw std::invalid_argument("sweep: bigP must be positive");
  if (!(d >= 0.0)) throw std::invalid_argument("sweep: d must be non-negative");
  if (!(std::abs(a) <= 1.0)) throw std::invalid_argument("sweep: |a| must not exceed 1");
  if (!(fermion_epsilon > 0.0)) throw std::invalid_argument("sweep: fermion_epsilon must be positive");
}

BarrierSpec SweepConfig::barrier() const {
  BarrierSpec b;  // m = hbar = V0 = 1
  b.d = d * length_unit(b);
  return b;
}

ScenarioSpec SweepConfig::scenario_at(double q_mu) const {
  const BarrierSpec b = barrier();
  const double mu = momentum_unit(b);
  const double width = big_p * mu;
  ScenarioSpec s;
  s.a = a;
  s.b = std::sqrt(std::max(0.0, 1.0 - a * a));
  s.packets = {PacketSpec{p * mu, width, PacketId::Psi}, PacketSpec{q_mu * mu, width, PacketId::Phi},
               PacketSpec{pbar * mu, width, PacketId::PhiBar},
               PacketSpec{qbar * mu, width, PacketId::Chi}};
  if (statistics) s.statistics = *statistics;
  if (form) s.form = *form;
  return s;
}

PointReport evaluate_point(double q_mu, const SweepConfig& cfg) {
  const EvalContext ctx = make_context(cfg.scenario_at(q_mu), cfg.barrier(), cfg.fermion_epsilon);
  PointReport r;
  r.q = q_mu;
  r.dis_a = p_dis_product(Term::A, ctx).value;
  r.dis_b = p_dis_product(Term::B, ctx).value;
  r.dis_mix = p_dis_mixture(ctx).value;
  r.dis_sup = p_dis_superposition(ctx).value;
  r.ide_a_boson = p_ide_product(Term::A, Statistics::Boson, ctx).value;
  r.ide_b_boson = p_ide_product(Term::B, Statistics::Boson, ctx).value;
  r.ide_mix_boson = p_ide_mixture(Statistics::Boson, ctx).value;
  r.ide_sup_boson = p_ide_superposition(Statistics::Boson, ctx).value;
  r.ide_a_fermion = p_ide_product(Term::A, Statistics::Fermion, ctx).value;
  r.ide_b_fermion = p_ide_product(Term::B, Statistics::Fermion, ctx).value;
  r.ide_mix_fermion = p_ide_mixture(Statistics::Fermion, ctx).value;
  r.ide_sup_fermion = p_ide_superposition(Statistics::Fermion, ctx).value;
  return r;
}

namespace {

struct ColumnDef {
  const char* name;
  Statistics statistics;
  StateForm form;
  std::optional<double> PointReport::* member;
};

const ColumnDef kColumns[] = {
    {"P_dis_a", Statistics::Distinguishable, StateForm::ProductA, &PointReport::dis_a},
    {"P_dis_b", Statistics::Distinguishable, StateForm::ProductB, &PointReport::dis_b},
    {"P_dis_mix", Statistics::Distinguishable, StateForm::Mixture, &PointReport::dis_mix},
    {"P_dis_sup", Statistics::Distinguishable, StateForm::Superposition, &PointReport::dis_sup},
    {"P_ide_a_boson", Statistics::Boson, StateForm::ProductA, &PointReport::ide_a_boson},
    {"P_ide_b_boson", Statistics::Boson, StateForm::ProductB, &PointReport::ide_b_boson},
    {"P_ide_mix_boson", Statistics::Boson, StateForm::Mixture, &PointReport::ide_mix_boson},
    {"P_ide_sup_boson", Statistics::Boson, StateForm::Superposition, &PointReport::ide_sup_boson},
    {"P_ide_a_fermion", Statistics::Fermion, StateForm::ProductA, &PointReport::ide_a_fermion},
    {"P_ide_b_fermion", Statistics::Fermion, StateForm::ProductB, &PointReport::ide_b_fermion},
    {"P_ide_mix_fermion", Statistics::Fermion, StateForm::Mixture, &PointReport::ide_mix_fermion},
    {"P_ide_sup_fermion", Statistics::Fermion, StateForm::Superposition,
     &PointReport::ide_sup_fermion},
};

}  // namespace

const std::vector<std::string>& probability_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : kColumns) v.emplace_back(c.name);
    return v;
  }();
  return names;
}

std::optional<double> column_value(const PointReport& r, std::string_view column) {
  for (const auto& c : kColumns)
    if (column == c.name) return r.*(c.member);
  throw std::invalid_argument("unknown column: " + std::string(column));
}

std::vector<std::string> select_columns(std::optional<Statistics> statistics,
                                        std::optional<StateForm> form) {
  std::vector<std::string> out;
  for (const auto& c : kColumns) {
    if (statistics && c.statistics != *statistics) continue;
    if (form && c.form != *form) continue;
    out.emplace_back(c.name);
  }
  return out;
}

SweepTable run_sweep(const SweepConfig& cfg, const std::vector<std::string>& columns) {
  cfg.validate();
  for (const auto& col : columns)
    if (std::find(probability_columns().begin(), probability_columns().end(), col) ==
        probability_columns().end())
      throw std::invalid_argument("run_sweep: unknown column " + col);

  const int rows = cfg.steps + 1;
  SweepTable table;
  table.columns.reserve(columns.size() + 1);
  table.columns.emplace_back("q");
  table.columns.insert(table.columns.end(), columns.begin(), columns.end());
  table.rows.resize(rows);

  const double dq = (cfg.q_max - cfg.q_min) / cfg.steps;
  parallel_for(rows, cfg.threads, [&](int i) {
    const double q = cfg.q_min + i * dq;
    const PointReport r = evaluate_point(q, cfg);
    auto& row = table.rows[i];
    row.reserve(columns.size() + 1);
    row.emplace_back(q);
    for (const auto& col : columns) row.emplace_back(column_value(r, col));
  });
  return table;
}

std::string to_csv(const SweepTable& table) {
  std::string out;
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (row[c]) out += format_cell(*row[c]);
    }
    out += '\n';
  }
  return out;
}

SweepTable parse_csv(std::istream& in) {
  SweepTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("parse_csv: empty input");
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) table.columns.push_back(cell);
  if (table.columns.empty()) throw std::invalid_argument("parse_csv: empty header");

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::optional<double>> row;
    size_t start = 0;
    for (size_t c = 0; c < table.columns.size(); ++c) {
      const size_t end = c + 1 < table.columns.size() ? line.find(',', start) : line.size();
      if (end == std::string::npos) throw std::invalid_argument("parse_csv: short row");
      const std::string field = line.substr(start, end - start);
      if (c + 1 == table.columns.size() && field.find(',') != std::string::npos)
        throw std::invalid_argument("parse_csv: too many fields in row");
      row.emplace_back(field.empty() ? std::optional<double>{} : std::optional<double>{std::stod(field)});
      start = end + 1;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Statistics statistics_from_string(std::string_view s) {
  if (s == "distinguishable") return Statistics::Distinguishable;
  if (s == "boson") return Statistics::Boson;
  if (s == "fermion") return Statistics::Fermion;
  throw std::invalid_argument("unknown statistics: " + std::string(s));
}

StateForm form_from_string(std::string_view s) {
  if (s == "product_a") return StateForm::ProductA;
  if (s == "product_b") return StateForm::ProductB;
  if (s == "mixture") return StateForm::Mixture;
  if (s == "superposition") return StateForm::Superposition;
  throw std::invalid_argument("unknown state form: " + std::string(s));
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = {
      {"fig1", "distinguishable particles: product vs mixture vs superposition",
       {"P_dis_a", "P_dis_mix", "P_dis_sup"}},
      {"fig2", "product states: distinguishable vs bosons vs fermions",
       {"P_dis_a", "P_ide_a_boson", "P_ide_a_fermion"}},
      {"fig3", "superpositions: distinguishable vs bosons vs fermions",
       {"P_dis_sup", "P_ide_sup_boson", "P_ide_sup_fermion"}},
      {"fig4", "identical particles: mixture vs superposition",
       {"P_ide_mix_boson", "P_ide_sup_boson", "P_ide_mix_fermion", "P_ide_sup_fermion"}},
  };
  return all;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace twintunnel
