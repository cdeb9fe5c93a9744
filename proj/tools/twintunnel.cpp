// Command-line front end: momentum sweeps, single-point reports, SVG plots
// and the numerical validation scans.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "twintunnel/config.hpp"
#include "twintunnel/svg.hpp"
#include "twintunnel/validate.hpp"

namespace {

using namespace twintunnel;

struct CommonOpts {
  std::string config_path;
  std::optional<double> q_min, q_max, a, p, pbar, qbar, big_p, d, fermion_epsilon;
  std::optional<int> steps, threads;
  std::optional<std::string> statistics, form;
};

void add_param_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "flat key=value configuration file (flags win)");
  cmd->add_option("--q-min", o.q_min, "sweep start, m.u.");
  cmd->add_option("--q-max", o.q_max, "sweep end, m.u. (must stay below sqrt(2))");
  cmd->add_option("--steps", o.steps,
                  "grid intervals; multiples of 139 place q = p on a grid point");
  cmd->add_option("--a", o.a, "superposition coefficient a; b = sqrt(1 - a^2)");
  cmd->add_option("--p", o.p, "central momentum of psi, m.u.");
  cmd->add_option("--pbar", o.pbar, "central momentum of phibar, m.u.");
  cmd->add_option("--qbar", o.qbar, "central momentum of chi, m.u.");
  cmd->add_option("--bigP", o.big_p, "packet width parameter P, m.u.");
  cmd->add_option("--d", o.d, "barrier width, l.u.");
  cmd->add_option("--statistics", o.statistics, "distinguishable|boson|fermion (column filter)")
      ->check(CLI::IsMember({"distinguishable", "boson", "fermion"}));
  cmd->add_option("--form", o.form, "product_a|product_b|mixture|superposition (column filter)")
      ->check(CLI::IsMember({"product_a", "product_b", "mixture", "superposition"}));
  cmd->add_option("--threads", o.threads, "worker threads, 0 = hardware");
  cmd->add_option("--fermion-epsilon", o.fermion_epsilon,
                  "coincidence tolerance on 1 - |overlap|^2");
}

struct Resolved {
  SweepConfig sweep;
  oracle::GridSpec grid;
  Tolerances tol;
  bool steps_given = false;
};

Resolved resolve(const CommonOpts& o) {
  Resolved r;
  if (!o.config_path.empty()) {
    const auto kv = load_key_values(o.config_path);
    apply_config(kv, r.sweep, r.grid, r.tol);
    r.steps_given = kv.count("steps") > 0;
  }
  if (o.q_min) r.sweep.q_min = *o.q_min;
  if (o.q_max) r.sweep.q_max = *o.q_max;
  if (o.steps) {
    r.sweep.steps = *o.steps;
    r.steps_given = true;
  }
  if (o.a) r.sweep.a = *o.a;
  if (o.p) r.sweep.p = *o.p;
  if (o.pbar) r.sweep.pbar = *o.pbar;
  if (o.qbar) r.sweep.qbar = *o.qbar;
  if (o.big_p) r.sweep.big_p = *o.big_p;
  if (o.d) r.sweep.d = *o.d;
  if (o.threads) r.sweep.threads = *o.threads;
  if (o.fermion_epsilon) r.sweep.fermion_epsilon = *o.fermion_epsilon;
  if (o.statistics) r.sweep.statistics = statistics_from_string(*o.statistics);
  if (o.form) r.sweep.form = form_from_string(*o.form);
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed while writing " + path);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : "undefined"; }

int cmd_sweep(const CommonOpts& opts, const std::string& preset_name, const std::string& out_path) {
  Resolved r = resolve(opts);
  std::vector<std::string> columns;
  if (!preset_name.empty()) {
    const Preset* preset = find_preset(preset_name);
    if (!preset) throw std::invalid_argument("unknown preset: " + preset_name);
    columns = preset->columns;
    if (!r.steps_given) r.sweep.steps = preset->steps;
  } else {
    columns = select_columns(r.sweep.statistics, r.sweep.form);
  }
  const SweepTable table = run_sweep(r.sweep, columns);
  write_file(out_path, to_csv(table));
  std::printf("wrote %zu rows x %zu columns to %s\n", table.rows.size(), table.columns.size(),
              out_path.c_str());
  return 0;
}

int cmd_plot(const std::string& in_path, const std::string& out_path, const std::string& title) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open " + in_path);
  const SweepTable table = parse_csv(in);
  PlotStyle style;
  style.title = title;
  write_file(out_path, render_line_chart(table, style));
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

int cmd_point(const CommonOpts& opts, double q) {
  Resolved r = resolve(opts);
  const SweepConfig& cfg = r.sweep;
  const BarrierSpec bar = cfg.barrier();
  const double mu = momentum_unit(bar);
  const ScenarioSpec scen = cfg.scenario_at(q);
  const EvalContext ctx = make_context(scen, bar, cfg.fermion_epsilon);

  std::printf("q = %s m.u.   (p = %g, pbar = %g, qbar = %g, P = %g m.u., d = %g l.u., a = %.12g)\n",
              fmt(q).c_str(), cfg.p, cfg.pbar, cfg.qbar, cfg.big_p, cfg.d, cfg.a);
  std::printf("\n%-8s %-10s %-14s %-14s %-14s %-14s\n", "packet", "p [m.u.]", "|T|^2", "arg T",
              "tau", "p_e [m.u.]");
  for (PacketId id : kPacketIds) {
    const auto& sc = ctx.scatter[static_cast<int>(id)];
    const double p_mu = momentum_to_mu(scen.packet(id).p_central, bar);
    std::printf("%-8s %-10.6g %-14.8g %-14.8g %-14.8g %-14s\n", packet_name(id), p_mu,
                sc.magnitude2, sc.phase, sc.tau,
                sc.p_eff ? fmt(momentum_to_mu(*sc.p_eff, bar)).c_str() : "undefined");
  }

  std::printf("\noverlaps (initial / transmitted):\n");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const auto x = static_cast<PacketId>(i), y = static_cast<PacketId>(j);
      std::printf("  <%s|%s> = %.10g / %s\n", packet_name(x), packet_name(y),
                  ctx.overlaps.initial(x, y), fmt_opt(ctx.overlaps.transmitted(x, y)).c_str());
    }

  std::printf("\nnormalizations:\n");
  {
    ScenarioSpec tmp = scen;
    const NormSet dis = norm_set(tmp, ctx.overlaps, ctx.scatter, cfg.fermion_epsilon);
    std::printf("  N          = %s\n", fmt_opt(dis.N).c_str());
    std::printf("  N_T^-2     = %s\n", fmt_opt(dis.NT_inv2).c_str());
    for (Statistics st : {Statistics::Boson, Statistics::Fermion}) {
      tmp.statistics = st;
      const NormSet ns = norm_set(tmp, ctx.overlaps, ctx.scatter, cfg.fermion_epsilon);
      std::printf("  [%s] Na = %s, Nb = %s, calN = %s, calN_T^-2 = %s\n", statistics_name(st),
                  fmt_opt(ns.Na).c_str(), fmt_opt(ns.Nb).c_str(), fmt_opt(ns.calN).c_str(),
                  fmt_opt(ns.calNT_inv2).c_str());
    }
  }

  const PointReport report = evaluate_point(q, cfg);
  std::printf("\nprobabilities:\n");
  for (const auto& col : probability_columns())
    std::printf("  %-18s = %s\n", col.c_str(), fmt_opt(column_value(report, col)).c_str());
  return 0;
}

int cmd_validate(const CommonOpts& opts, const std::optional<double>& tol_transmission,
                 const std::optional<double>& tol_delay, const std::optional<double>& tol_grid,
                 const std::optional<int>& grid_points, const std::optional<double>& grid_span,
                 const std::optional<double>& energy_step) {
  Resolved r = resolve(opts);
  if (tol_transmission) r.tol.transmission_abs = *tol_transmission;
  if (tol_delay) r.tol.derivative_rel = *tol_delay;
  if (tol_grid) r.tol.grid_rel = *tol_grid;
  if (grid_points) r.grid.points = *grid_points;
  if (grid_span) r.grid.span = *grid_span;
  if (energy_step) r.grid.energy_step = *energy_step;

  const ValidationReport report = run_validation(r.sweep, r.grid, r.tol);
  for (size_t i = 0; i < report.checks.size(); ++i) {
    const auto& c = report.checks[i];
    std::printf("[%zu/%zu] %-46s max %.3e (tol %.3e) over %s  %s\n", i + 1, report.checks.size(),
                c.name.c_str(), c.measured, c.limit, c.detail.c_str(),
                c.pass ? "PASS" : "FAIL");
  }
  std::printf("overall: %s\n", report.pass ? "PASS" : "FAIL");
  return report.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-particle tunnelling probabilities through a rectangular barrier"};
  app.require_subcommand(1);

  CommonOpts sweep_opts;
  std::string preset_name, sweep_out;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate probabilities over a momentum grid");
  add_param_flags(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--preset", preset_name, "fig1|fig2|fig3|fig4 column presets")
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
  sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();

  std::string plot_in, plot_out, plot_title;
  CLI::App* plot_cmd = app.add_subcommand("plot", "render a sweep CSV as an SVG line chart");
  plot_cmd->add_option("--in", plot_in, "input CSV")->required();
  plot_cmd->add_option("--out", plot_out, "output SVG path")->required();
  plot_cmd->add_option("--title", plot_title, "chart title");

  CommonOpts point_opts;
  double point_q = 1.0;
  CLI::App* point_cmd =
      app.add_subcommand("point", "print all probabilities and diagnostics at one q");
  add_param_flags(point_cmd, point_opts);
  point_cmd->add_option("--q", point_q, "momentum of packet phi, m.u.");

  CommonOpts val_opts;
  std::optional<double> tol_transmission, tol_delay, tol_grid, grid_span, energy_step;
  std::optional<int> grid_points;
  CLI::App* val_cmd = app.add_subcommand("validate", "run the numerical ground-truth scans");
  add_param_flags(val_cmd, val_opts);
  val_cmd->add_option("--tol-transmission", tol_transmission, "absolute |T|^2 tolerance");
  val_cmd->add_option("--tol-delay", tol_delay, "relative delay tolerance");
  val_cmd->add_option("--tol-grid", tol_grid, "relative probability tolerance");
  val_cmd->add_option("--grid-points", grid_points, "grid points per packet window");
  val_cmd->add_option("--grid-span", grid_span, "grid half-window in packet widths");
  val_cmd->add_option("--energy-step", energy_step, "finite-difference energy step");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, preset_name, sweep_out);
    if (plot_cmd->parsed()) return cmd_plot(plot_in, plot_out, plot_title);
    if (point_cmd->parsed()) return cmd_point(point_opts, point_q);
    if (val_cmd->parsed())
      return cmd_validate(val_opts, tol_transmission, tol_delay, tol_grid, grid_points, grid_span,
                          energy_step);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
