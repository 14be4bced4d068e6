// Copyright 2026 The qfilter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfilter_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <locale>
#include <iostream>
#include <optional>
#include <sstream>

#include "qfilter/build_info.hpp"
#include "qfilter/ensemble.hpp"
#include "qfilter/error.hpp"
#include "qfilter/io.hpp"
#include "qfilter/purity.hpp"
#include "qfilter/scenario.hpp"
#include "qfilter/validation.hpp"

namespace qfilter::cli {

namespace {

struct RunArgs {
  std::string config;
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trajectories;
  unsigned threads = 0;
  bool dump = false;
  bool list = false;
  bool print_config = false;
};

struct ValidateArgs {
  bool list = false;
  std::uint64_t seed = ValidationOptions{}.seed;
  std::size_t samples = ValidationOptions{}.samples;
};

void add_run_flags(CLI::App* cmd, RunArgs& a, bool ensemble) {
  cmd->add_option("--config", a.config, "Scenario JSON file");
  cmd->add_option("--scenario", a.scenario, "Built-in scenario name");
  cmd->add_option("--out", a.out, "Output CSV path; the manifest goes to <out>.manifest.json");
  cmd->add_option("--seed", a.seed, "Override the integrator seed");
  cmd->add_flag("--list", a.list, "List built-in scenarios and exit");
  cmd->add_flag("--print-config", a.print_config, "Print the resolved scenario JSON and exit");
  if (ensemble) {
    cmd->add_option("--trajectories", a.trajectories, "Override the ensemble size");
    cmd->add_option("--threads", a.threads, "Worker threads (0: all cores)");
    cmd->add_flag("--dump-trajectories", a.dump,
                  "Also write every trajectory to <out>.trajectories.csv");
  }
}

Scenario resolve(const RunArgs& a) {
  if (a.config.empty() == a.scenario.empty()) {
    throw InvalidInput("give exactly one of --config or --scenario");
  }
  Scenario s = a.config.empty() ? builtin_scenario(a.scenario) : load_scenario(a.config);
  if (a.seed) {
    s.integrator.seed = *a.seed;
  }
  if (a.trajectories) {
    s.n_trajectories = *a.trajectories;
  }
  s.validate();
  return s;
}

void require_out(const RunArgs& a) {
  if (a.out.empty()) {
    throw InvalidInput("--out is required");
  }
}

Manifest make_manifest(const char* command, const Scenario& s, const std::string& out) {
  Manifest m;
  m.command = command;
  m.scenario = s;
  m.outputs = {out};
  m.warnings = s.warnings();
  return m;
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

template <class Write>
void write_csv(const std::string& path, Write&& write) {
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  write(buf);
  write_text_file(path, buf.str());
}

void add_trajectory_warnings(std::vector<std::string>& w, std::size_t clamped, std::size_t large,
                             double defect) {
  if (clamped > 0) {
    w.push_back(std::to_string(clamped) + " steps with a negative counting rate clamped to 0");
  }
  if (large > 0) {
    w.push_back(std::to_string(large) + " steps with nu*dt above the warning threshold");
  }
  if (defect > 1e-6) {
    w.push_back("normalization drifted by up to " + format_double(defect));
  }
}

int cmd_simulate(const RunArgs& a, std::ostream& out) {
  const Scenario s = resolve(a);
  if (a.print_config) {
    out << scenario_to_json(s) << "\n";
    return kOk;
  }
  require_out(a);
  const QubitFilter model = s.filter();
  const TrajectoryRecord rec = integrate_sme(model, s.initial_state(), s.integrator);
  write_csv(a.out, [&](std::ostream& o) { write_trajectory_csv(o, rec); });

  Manifest m = make_manifest("simulate", s, a.out);
  add_trajectory_warnings(m.warnings, rec.clamped_rates, rec.rate_warnings,
                          rec.max_normalization_defect);
  write_text_file(manifest_path(a.out), manifest_to_json(m));
  out << "wrote " << a.out << " (" << rec.rows() << " rows";
  if (rec.detection == Detection::photon_counting) {
    out << ", " << rec.jump_times.size() << " jumps";
  }
  out << ")\n";
  return kOk;
}

void print_metrics(std::ostream& out, const ComparisonMetrics& m) {
  auto row = [&](const char* name, const ObservableMetrics& o) {
    out << "  " << name << ": sup_norm " << format_double(o.sup_norm) << ", rmse "
        << format_double(o.rmse) << ", max |z-score| " << format_double(o.max_abs_z_score)
        << "\n";
  };
  row("x", m.x);
  row("y", m.y);
  row("z", m.z);
}

int finish_ensemble(const EnsembleResult& r, Manifest& m, std::ostream& out) {
  add_trajectory_warnings(m.warnings, r.clamped_rates, r.rate_warnings,
                          r.max_normalization_defect);
  m.failures = r.failures;
  m.completed = r.completed;
  for (const auto& path : m.outputs) {
    out << "wrote " << path << "\n";
  }
  if (!r.failures.empty()) {
    out << r.failures.size() << " trajectories failed; see the manifest\n";
    return kRunFailed;
  }
  return kOk;
}

int cmd_ensemble(const RunArgs& a, std::ostream& out) {
  const Scenario s = resolve(a);
  if (a.print_config) {
    out << scenario_to_json(s) << "\n";
    return kOk;
  }
  require_out(a);
  EnsembleOptions opt;
  opt.threads = a.threads;
  opt.keep_trajectories = a.dump;
  const EnsembleResult r = run_ensemble(s, opt);
  Manifest m = make_manifest("ensemble", s, a.out);
  write_csv(a.out, [&](std::ostream& o) { write_ensemble_csv(o, r); });
  if (a.dump) {
    const std::string dump = a.out + ".trajectories.csv";
    write_csv(dump, [&](std::ostream& o) { write_trajectory_dump(o, r); });
    m.outputs.push_back(dump);
  }
  if (r.completed > 0) {
    m.metrics = compare_to_me(r);
  }
  const int code = finish_ensemble(r, m, out);
  write_text_file(manifest_path(a.out), manifest_to_json(m));
  if (m.metrics) {
    out << r.completed << " trajectories against the master equation\n";
    print_metrics(out, *m.metrics);
  }
  return code;
}

int cmd_purity(const RunArgs& a, std::ostream& out) {
  Scenario s = resolve(a);
  if (a.print_config) {
    out << scenario_to_json(s) << "\n";
    return kOk;
  }
  require_out(a);
  EnsembleOptions opt;
  opt.threads = a.threads;
  const EnsembleResult r = run_ensemble(s, opt);

  Scenario me_scenario = s;
  me_scenario.integrator.keep_blocks = true;
  const TrajectoryRecord me = run_me(me_scenario);
  const SystemTriple g = s.system();

  PurityTable t;
  t.times = me.times;
  t.me_purity = me.purity;
  t.mean = r.purity.mean;
  t.standard_error = r.purity.standard_error;
  FieldSample field;
  for (std::size_t i = 0; i < me.rows(); ++i) {
    sample_field(s.input, me.times[i], field);
    t.me_rate.push_back(purity_rate_qubit_me(me.blocks[i], field, g.gamma));
    t.me_rate_trace.push_back(purity_rate_general_unconditioned(g, me.blocks[i], field));
  }
  write_csv(a.out, [&](std::ostream& o) { write_purity_csv(o, t); });

  Manifest m = make_manifest("purity", s, a.out);
  const int code = finish_ensemble(r, m, out);
  write_text_file(manifest_path(a.out), manifest_to_json(m));
  return code;
}

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  if (a.list) {
    for (const auto& name : validation_check_names()) {
      out << name << "\n";
    }
    return kOk;
  }
  ValidationOptions opt;
  opt.seed = a.seed;
  opt.samples = a.samples;
  const auto results = run_validation(opt);
  bool ok = true;
  for (const auto& r : results) {
    out << (r.passed ? "pass  " : "FAIL  ") << std::left << std::setw(40) << r.name
        << " max deviation " << format_double(r.max_deviation);
    if (!r.detail.empty()) {
      out << "  (" << r.detail << ")";
    }
    out << "\n";
    ok = ok && r.passed;
  }
  out << (ok ? "all checks passed\n" : "some checks failed\n");
  return ok ? kOk : kCheckFailed;
}

int list_scenarios(std::ostream& out) {
  for (const auto& name : builtin_scenario_names()) {
    out << name << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum filters for a two-level system driven by vacuum, single-photon and "
               "cat-state fields"};
  app.set_version_flag("--version", std::string(version_string()) + " (" + build_describe() + ")");
  app.require_subcommand(1);

  RunArgs sim, ens, pur;
  ValidateArgs val;
  auto* simulate = app.add_subcommand("simulate", "Integrate one conditioned trajectory");
  add_run_flags(simulate, sim, false);
  auto* ensemble = app.add_subcommand("ensemble", "Ensemble statistics against the master equation");
  add_run_flags(ensemble, ens, true);
  auto* purity = app.add_subcommand("purity", "Purity of the ensemble and of the master equation");
  add_run_flags(purity, pur, true);
  auto* validate = app.add_subcommand("validate", "Run the built-in consistency checks");
  validate->add_flag("--list", val.list, "List check names without running them");
  validate->add_option("--seed", val.seed, "Seed for the random test states");
  validate->add_option("--samples", val.samples, "Random states per check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) {
    reversed.pop_back();  // program name
  }
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadConfig;
  }

  try {
    if (simulate->parsed()) {
      return sim.list ? list_scenarios(out) : cmd_simulate(sim, out);
    }
    if (ensemble->parsed()) {
      return ens.list ? list_scenarios(out) : cmd_ensemble(ens, out);
    }
    if (purity->parsed()) {
      return pur.list ? list_scenarios(out) : cmd_purity(pur, out);
    }
    return cmd_validate(val, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const Error& e) {
    // Divergence, oversized steps, degenerate jumps.
    err << "error: " << e.what() << "\n";
    return kRunFailed;
  }
}

}  // namespace qfilter::cli
