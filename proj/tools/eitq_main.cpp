// Command-line front end: loads a scenario file and emits figure, spectrum
// and self-check tables as headered CSV.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "eitq/csv.hpp"
#include "eitq/errors.hpp"
#include "eitq/scenario.hpp"

namespace {

using namespace eitq;

constexpr int kExitValidation = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitConvergence = 3;

struct Options {
  std::string scenario_path;
  std::string out_path;
  bool no_timestamp = false;
  int grid_points = 0;        // overrides analysis.points when > 0
  int nz = 512, nt = 8192;    // oracle grids
  std::string dump_field;     // optional envelope dump
  int dump_stride = 1;
};

FrequencyGrid analysis_grid(const Scenario& s, const Options& opt) {
  GridSpec spec = s.analysis;
  if (opt.grid_points > 0 && spec.omegas.empty()) spec.points = opt.grid_points;
  return spec.build();
}

std::vector<double> figures_row(const Scenario& s) {
  const Susceptibility fig = derived_figures(s.medium);
  return {fig.absorption_K,
          fig.group_velocity,
          fig.window,
          fig.window / (2.0 * M_PI),
          fig.delay,
          fig.absorption_K * s.medium.length_L};
}

Table run_figures(const Scenario& s, const Options&) {
  Table t;
  t.columns = {"K_per_m", "v_g_m_per_s", "delta_omega_rad_per_s",
               "delta_omega_over_2pi_Hz", "tau_d_s", "KL"};
  t.add_row(figures_row(s));
  return t;
}

Table run_squeezing(const Scenario& s, const Options& opt) {
  if (!s.has_squeezed())
    throw ScenarioError("input.kind", "squeezing command needs a squeezed input");
  const auto& in = std::get<SqueezedInput>(s.input);
  const FrequencyGrid grid = analysis_grid(s, opt);
  const SpectrumCurve out = squeezing_out(s.medium, in, grid);
  const SpectrumCurve trans = transmission_curve(s.medium, grid);
  const SpectrumCurve nf = noise_floor_curve(s.medium, grid);

  Table t;
  t.columns = {"omega_rad_per_s", "s_in", "transmission", "noise_floor", "s_out"};
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    t.add_row({grid.omegas[i], in.value_at(grid.omegas[i]), trans.values[i],
               nf.values[i], out.values[i]});
  return t;
}

Table run_entanglement(const Scenario& s, const Options& opt) {
  if (!s.has_entangled())
    throw ScenarioError("input.kind", "entanglement command needs an entangled input");
  const auto& in = std::get<EntangledInput>(s.input);
  const FrequencyGrid grid = analysis_grid(s, opt);

  const double pi_2 = M_PI / 2.0;
  const SpectrumCurve a1 = entanglement_out_full(s.medium, in, s.theta, s.phi, grid);
  const SpectrumCurve a2 =
      entanglement_out_full(s.medium, in, s.theta + pi_2, s.phi - pi_2, grid);
  const SpectrumCurve duan = duan_measure(a1, a2);
  const SpectrumCurve b1 = entanglement_out_approx(s.medium, in, s.theta, s.phi, grid);
  const SpectrumCurve b2 =
      entanglement_out_approx(s.medium, in, s.theta + pi_2, s.phi - pi_2, grid);
  const SpectrumCurve duan_approx = duan_measure(b1, b2);
  const SpectrumCurve nf = noise_floor_curve(s.medium, grid);

  Table t;
  t.columns = {"omega_rad_per_s", "duan_in",    "a_pair",     "a_conjugate_pair",
               "duan_out",        "duan_approx", "noise_floor"};
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    t.add_row({grid.omegas[i], in.a_in(s.theta, s.phi, grid.omegas[i]), a1.values[i],
               a2.values[i], duan.values[i], duan_approx.values[i], nf.values[i]});
  return t;
}

Table run_oracle(const Scenario& s, const Options& opt) {
  if (!s.has_pulse())
    throw ScenarioError("input.kind", "oracle command needs a pulse input");
  const auto& pulse = std::get<PulseSpec>(s.input);
  const TransferReport rep = transfer_equivalence(s.medium, pulse, opt.nz, opt.nt);
  double tau_d = 0.0;
  if (s.medium.ng2() > 0) tau_d = derived_figures(s.medium).delay;

  if (!opt.dump_field.empty()) {
    const PulseField field = propagate(s.medium, pulse, opt.nz, opt.nt);
    std::ofstream os(opt.dump_field);
    if (!os) throw std::runtime_error("cannot open dump file: " + opt.dump_field);
    dump_field_csv(field, os, opt.dump_stride);
  }

  Table t;
  t.columns = {"nz", "nt", "rel_l2", "measured_delay_s", "tau_d_s",
               "delay_rel_err", "trans_time_domain", "trans_freq_domain",
               "bandwidth_ratio", "in_window", "max_step_error"};
  const double delay_err =
      tau_d > 0 ? std::abs(rep.measured_delay - tau_d) / tau_d : 0.0;
  t.add_row({double(opt.nz), double(opt.nt), rep.rel_l2, rep.measured_delay, tau_d,
             delay_err, rep.trans_time_domain, rep.trans_freq_domain,
             rep.bandwidth_ratio, rep.in_window ? 1.0 : 0.0, rep.max_step_error});
  return t;
}

Table run_command(const std::string& command, const Scenario& s, const Options& opt) {
  if (command == "figures") return run_figures(s, opt);
  if (command == "squeezing") return run_squeezing(s, opt);
  if (command == "entanglement") return run_entanglement(s, opt);
  if (command == "oracle") return run_oracle(s, opt);
  throw ScenarioError("sweep.command",
                      "must be one of figures, squeezing, entanglement, oracle");
}

Table run_sweep(const Scenario& base, const Options& opt) {
  if (!base.sweep) throw ScenarioError("sweep", "missing sweep block");
  const SweepSpec& sw = *base.sweep;
  if (sw.command.empty())
    throw ScenarioError("sweep.command", "missing");
  if (sw.command == "oracle")
    throw ScenarioError("sweep.command", "sweeping the oracle is not supported");

  // Rows are ordered by sweep index regardless of completion order.
  std::vector<std::future<Table>> futs;
  futs.reserve(sw.values.size());
  for (double value : sw.values) {
    futs.push_back(std::async(std::launch::async, [&, value] {
      Scenario s = base;
      apply_sweep_value(s, sw.param, value);
      return run_command(sw.command, s, opt);
    }));
  }

  Table t;
  for (size_t i = 0; i < futs.size(); ++i) {
    Table part = futs[i].get();
    if (t.columns.empty()) {
      t.columns = {sw.param};
      t.columns.insert(t.columns.end(), part.columns.begin(), part.columns.end());
    }
    for (auto& row : part.rows) {
      std::vector<double> full{sw.values[i]};
      full.insert(full.end(), row.begin(), row.end());
      t.add_row(std::move(full));
    }
  }
  return t;
}

int dispatch(const std::string& command, const Options& opt) {
  const Scenario s = load_scenario(opt.scenario_path);
  Table t = command == "sweep" ? run_sweep(s, opt) : run_command(command, s, opt);
  write_csv_file(t, opt.out_path, !opt.no_timestamp);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EIT slow-light quantum noise calculator"};
  app.require_subcommand(1);

  Options opt;
  const std::vector<std::string> names = {"figures", "squeezing", "entanglement",
                                          "oracle", "sweep"};
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--scenario", opt.scenario_path, "Scenario JSON file")->required();
    sub->add_option("--out", opt.out_path, "Output CSV path")->required();
    sub->add_flag("--no-timestamp", opt.no_timestamp, "Suppress the timestamp header");
    sub->add_option("--grid-points", opt.grid_points, "Override analysis point count");
    if (name == "oracle") {
      sub->add_option("--nz", opt.nz, "Spatial steps")->check(CLI::PositiveNumber);
      sub->add_option("--nt", opt.nt, "Time samples")->check(CLI::PositiveNumber);
      sub->add_option("--dump-field", opt.dump_field, "Write the full envelope as CSV");
      sub->add_option("--dump-stride", opt.dump_stride, "Subsampling stride for the dump");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitValidation : 0;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, opt);
  } catch (const DegenerateRegime& e) {
    std::cerr << "degenerate regime: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const StepSizeTooCoarse& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const NoPeak& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
