// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include <CLI11.hpp>
#include <cstdint>

#include "mmwv2i/commands.hpp"
#include "mmwv2i/io.hpp"

using mmwv2i::tools::CommandOptions;

namespace {

void add_common(CLI::App* cmd, CommandOptions& options, std::uint64_t& seed,
                int& trials, bool with_trials) {
  cmd->add_option("--config", options.config_path, "JSON configuration file");
  cmd->add_option("--out", options.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--seed", seed, "override the config seed");
  if (with_trials) {
    cmd->add_option("--trials", trials, "override the config trial count");
  }
  cmd->add_option("--preset", options.preset,
                  "figure preset: fig1, fig3, fig5, fig6, fig7, fig8");
  cmd->add_option("--jobs", options.jobs,
                  "worker threads (0 = hardware concurrency)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmWave V2I coverage and connectivity toolkit"};
  app.set_version_flag("--version", std::string(mmwv2i::version()));
  app.require_subcommand(1);

  CommandOptions options;
  std::uint64_t seed = 0;
  int trials = 0;

  auto* coverage = app.add_subcommand(
      "coverage", "Monte Carlo coverage-range sweep (writes coverage.csv)");
  add_common(coverage, options, seed, trials, true);
  coverage->add_flag("--gnuplot", options.gnuplot,
                     "also write a gnuplot script");

  auto* connectivity = app.add_subcommand(
      "connectivity",
      "closed-form connectivity sweeps (writes connectivity_*.csv)");
  add_common(connectivity, options, seed, trials, false);
  connectivity->add_option("--coverage", options.coverage_csv,
                           "coverage.csv with R_comm per density and array");

  auto* throughput = app.add_subcommand(
      "throughput", "rate and throughput sweeps (writes throughput*.csv)");
  add_common(throughput, options, seed, trials, false);
  throughput->add_option("--coverage", options.coverage_csv,
                         "coverage.csv with R_comm per density and array");
  throughput->add_flag("--gnuplot", options.gnuplot,
                       "also write a gnuplot script");

  auto* validate = app.add_subcommand(
      "validate",
      "road-simulation oracle vs closed forms (writes validation.csv)");
  add_common(validate, options, seed, trials, false);
  validate->add_option("--slots", options.validate_slots,
                       "total slots per grid point")
      ->capture_default_str();
  validate->add_option("--runs", options.validate_runs,
                       "independent replications per grid point")
      ->capture_default_str();
  validate->add_flag("--dump-traces", options.dump_traces,
                     "write per-slot traces for each grid point");
  validate
      ->add_option("--perturb-analytic", options.perturb_analytic,
                   "scale the gated closed forms by (1 + x); negative control")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : mmwv2i::tools::kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  if (auto* o = active->get_option_no_throw("--seed"); o && o->count()) {
    options.seed = seed;
  }
  if (auto* o = active->get_option_no_throw("--trials"); o && o->count()) {
    options.trials = trials;
  }

  if (app.got_subcommand(coverage)) return mmwv2i::tools::cmd_coverage(options);
  if (app.got_subcommand(connectivity)) {
    return mmwv2i::tools::cmd_connectivity(options);
  }
  if (app.got_subcommand(throughput)) {
    return mmwv2i::tools::cmd_throughput(options);
  }
  return mmwv2i::tools::cmd_validate(options);
}
