// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace mmwv2i::tools {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitValidation = 3;

struct CommandOptions {
  std::string config_path;  // empty -> built-in defaults
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string preset;
  int jobs = 0;
  std::string coverage_csv;  // connectivity / throughput input
  // validate-specific
  std::int64_t validate_slots = 100000;
  int validate_runs = 50;
  bool dump_traces = false;
  double perturb_analytic = 0.0;  // test hook for the negative control
  bool gnuplot = false;
};

/// Monte Carlo coverage sweep -> coverage.csv. Returns an exit code.
int cmd_coverage(const CommandOptions& options);

/// Closed-form connectivity sweeps -> connectivity_{mimo,speed,trto}.csv.
int cmd_connectivity(const CommandOptions& options);

/// Rate and throughput sweeps -> throughput.csv + throughput_fig8.csv.
int cmd_throughput(const CommandOptions& options);

/// Road-simulation oracle grid -> validation.csv; exit 0 only when every
/// gated |z| <= 3.
int cmd_validate(const CommandOptions& options);

}  // namespace mmwv2i::tools
