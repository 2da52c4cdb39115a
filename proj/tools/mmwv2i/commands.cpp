// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include "mmwv2i/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "mmwv2i/config.hpp"
#include "mmwv2i/connectivity.hpp"
#include "mmwv2i/coverage.hpp"
#include "mmwv2i/io.hpp"
#include "mmwv2i/presets.hpp"
#include "mmwv2i/rng.hpp"
#include "mmwv2i/road_sim.hpp"
#include "mmwv2i/units.hpp"

namespace mmwv2i::tools {

namespace {

namespace fs = std::filesystem;

struct CommandContext {
  SimulationConfig config;
  Preset preset;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string config_hash;
  std::chrono::steady_clock::time_point started;
  RunManifest manifest;
};

CommandContext make_context(const CommandOptions& options,
                            const std::string& command) {
  CommandContext ctx;
  ctx.started = std::chrono::steady_clock::now();
  std::string config_text;
  if (options.config_path.empty()) {
    ctx.config = default_config();
    config_text = "{}";
  } else {
    config_text = read_file(options.config_path);  // runtime_error -> exit 2
    ctx.config = parse_config(config_text);
  }
  ctx.preset = resolve_preset(options.preset, ctx.config.densities_per_km);
  ctx.seed = options.seed.value_or(ctx.config.raw.seed);
  ctx.trials = options.trials.value_or(ctx.config.trials);
  ctx.config_hash = fnv1a_hex(config_text);
  ctx.manifest.tool_version = version();
  ctx.manifest.command = command;
  ctx.manifest.config_hash = ctx.config_hash;
  ctx.manifest.seed = ctx.seed;
  return ctx;
}

void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory: " + out_dir);
  }
}

void emit(CommandContext& ctx, const std::string& out_dir,
          const std::string& name, const std::string& contents) {
  const std::string path = (fs::path(out_dir) / name).string();
  write_file(path, contents);
  ctx.manifest.output_checksums[name] = fnv1a_hex(contents);
}

void finish(CommandContext& ctx, const std::string& out_dir,
            const std::string& command) {
  ctx.manifest.wall_clock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    ctx.started)
          .count();
  const std::string name = command + "_manifest.json";
  write_file((fs::path(out_dir) / name).string(),
             manifest_to_json(ctx.manifest));
}

/// Tiny CSV reader for our own outputs.
std::vector<std::map<std::string, std::string>> parse_csv(
    const std::string& text) {
  std::vector<std::map<std::string, std::string>> rows;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) return rows;
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string field;
    while (std::getline(h, field, ',')) header.push_back(field);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream r(line);
    std::string field;
    std::map<std::string, std::string> row;
    for (const std::string& col : header) {
      if (!std::getline(r, field, ',')) field.clear();
      row[col] = field;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// R_comm lookup keyed by (rho in nodes/km, bs elements, vehicle elements).
class CoverageTable {
 public:
  static CoverageTable fixed(double r_comm_m) {
    CoverageTable t;
    t.fixed_ = r_comm_m;
    return t;
  }

  static CoverageTable from_csv(const std::string& path) {
    CoverageTable t;
    for (const auto& row : parse_csv(read_file(path))) {
      const double r = std::stod(row.at("r_comm_m"));
      if (std::isnan(r)) continue;  // failed sweep cells stay unresolvable
      const int bs = std::stoi(row.at("bs_rows")) * std::stoi(row.at("bs_cols"));
      const int veh =
          std::stoi(row.at("veh_rows")) * std::stoi(row.at("veh_cols"));
      t.table_[key(std::stod(row.at("rho_per_km")), bs, veh)] = r;
    }
    return t;
  }

  std::optional<double> lookup(double rho_per_km, int bs_elems,
                               int veh_elems) const {
    if (fixed_) return fixed_;
    const auto it = table_.find(key(rho_per_km, bs_elems, veh_elems));
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

 private:
  static std::string key(double rho_per_km, int bs, int veh) {
    std::ostringstream k;
    k << std::llround(rho_per_km * 1e6) << ':' << bs << ':' << veh;
    return k.str();
  }

  std::optional<double> fixed_;
  std::map<std::string, double> table_;
};

CoverageTable resolve_coverage(const CommandOptions& options,
                               const SimulationConfig& config) {
  if (!options.coverage_csv.empty()) {
    return CoverageTable::from_csv(options.coverage_csv);
  }
  if (config.r_comm_m) {
    return CoverageTable::fixed(*config.r_comm_m);
  }
  throw std::invalid_argument(
      "no coverage source: pass --coverage <coverage.csv> or set r_comm_m "
      "in the config");
}

const std::vector<std::string> kMetricsHeader = {
    "rho_per_km", "speed_kmh", "slot_s",      "bs_elems",
    "veh_elems",  "r_comm_m",  "p_start",     "p_no_leave",
    "p_nl",       "e_tl_s",    "e_tcomm_s",   "duration_ratio",
    "rate_bps",   "throughput_bps"};

void append_metrics_row(CsvWriter& csv, const MetricsPoint& pt,
                        const ConnectivityMetrics& m) {
  csv.add_row({CsvWriter::field(nodes_per_m_to_per_km(pt.rho_per_m)),
               CsvWriter::field(mps_to_kmh(pt.speed_mps)),
               CsvWriter::field(pt.t_rto_s),
               CsvWriter::field(pt.bs_array.elements()),
               CsvWriter::field(pt.veh_array.elements()),
               CsvWriter::field(pt.r_comm_m), CsvWriter::field(m.p_start),
               CsvWriter::field(m.p_no_leave_given_start),
               CsvWriter::field(m.p_nl), CsvWriter::field(m.e_tl_s),
               CsvWriter::field(m.e_tcomm_s),
               CsvWriter::field(m.duration_ratio), CsvWriter::field(m.rate_bps),
               CsvWriter::field(m.throughput_bps)});
}

/// Builds the grid for one figure-style variation, resolving R_comm per
/// point and collecting unresolvable points into an error.
std::vector<MetricsPoint> build_grid(const std::vector<double>& densities_km,
                                     const std::vector<ArrayConfig>& configs,
                                     const std::vector<double>& speeds_kmh,
                                     const std::vector<double>& slots_s,
                                     const CoverageTable& coverage) {
  std::vector<MetricsPoint> grid;
  std::vector<std::string> missing;
  for (double rho_km : densities_km) {
    for (const ArrayConfig& cfg : configs) {
      for (double v_kmh : speeds_kmh) {
        for (double slot : slots_s) {
          MetricsPoint pt;
          pt.rho_per_m = nodes_per_km_to_per_m(rho_km);
          pt.speed_mps = kmh_to_mps(v_kmh);
          pt.t_rto_s = slot;
          pt.bs_array = cfg.first;
          pt.veh_array = cfg.second;
          const auto r = coverage.lookup(rho_km, cfg.first.elements(),
                                         cfg.second.elements());
          if (!r) {
            std::ostringstream what;
            what << "rho=" << rho_km << "/km for " << cfg.first.elements()
                 << "x" << cfg.second.elements();
            missing.push_back(what.str());
            continue;
          }
          pt.r_comm_m = *r;
          grid.push_back(pt);
        }
      }
    }
  }
  if (!missing.empty()) {
    std::string what = "coverage table has no R_comm for:";
    for (const auto& m : missing) what += " [" + m + "]";
    throw std::invalid_argument(what);
  }
  return grid;
}

std::string gnuplot_script(const std::string& csv_name, const std::string& x,
                           const std::string& y) {
  std::ostringstream g;
  g << "set datafile separator ','\n"
    << "set key autotitle columnheader\n"
    << "set xlabel '" << x << "'\n"
    << "set ylabel '" << y << "'\n"
    << "plot '" << csv_name << "' using '" << x << "':'" << y
    << "' with linespoints\n";
  return g.str();
}

int guard(const std::string& command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::invalid_argument& e) {
    std::cerr << "mmwv2i " << command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "mmwv2i " << command << ": " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace

int cmd_coverage(const CommandOptions& options) {
  return guard("coverage", [&]() {
    CommandContext ctx = make_context(options, "coverage");
    ensure_out_dir(options.out_dir);

    std::vector<double> densities_per_m;
    for (double d : ctx.preset.densities_per_km) {
      densities_per_m.push_back(nodes_per_km_to_per_m(d));
    }

    const auto rows = coverage_sweep(
        densities_per_m, ctx.preset.mimo_configs, ctx.config.scenario,
        ctx.config.channel, ctx.trials, ctx.seed, CoverageOptions{},
        options.jobs);

    CsvWriter csv({"rho_per_km", "bs_rows", "bs_cols", "veh_rows", "veh_cols",
                   "r_comm_m", "ci95_m", "n_trials", "seed", "reason"});
    std::size_t config_index = 0;
    const std::size_t n_configs = ctx.preset.mimo_configs.size();
    for (const CoverageSweepRow& row : rows) {
      const ArrayConfig& cfg = ctx.preset.mimo_configs[config_index];
      config_index = (config_index + 1) % n_configs;
      csv.add_row({CsvWriter::field(nodes_per_m_to_per_km(row.result.rho_per_m)),
                   CsvWriter::field(cfg.first.rows),
                   CsvWriter::field(cfg.first.cols),
                   CsvWriter::field(cfg.second.rows),
                   CsvWriter::field(cfg.second.cols),
                   CsvWriter::field(row.result.r_comm_m),
                   CsvWriter::field(row.result.ci95_m),
                   CsvWriter::field(row.result.n_trials),
                   CsvWriter::field(row.result.seed), row.failure_reason});
    }
    emit(ctx, options.out_dir, "coverage.csv", csv.text());
    if (options.gnuplot) {
      emit(ctx, options.out_dir, "coverage.gp",
           gnuplot_script("coverage.csv", "rho_per_km", "r_comm_m"));
    }
    finish(ctx, options.out_dir, "coverage");
    return kExitOk;
  });
}

int cmd_connectivity(const CommandOptions& options) {
  return guard("connectivity", [&]() {
    CommandContext ctx = make_context(options, "connectivity");
    ensure_out_dir(options.out_dir);
    const CoverageTable coverage = resolve_coverage(options, ctx.config);

    MetricsSweepOptions sweep;
    sweep.with_rate = false;  // closed forms only; rate lives in `throughput`
    sweep.seed = ctx.seed;
    sweep.jobs = options.jobs;

    const Preset& p = ctx.preset;
    struct Variation {
      std::string file;
      std::vector<ArrayConfig> configs;
      std::vector<double> speeds;
      std::vector<double> slots;
    };
    const std::vector<Variation> variations = {
        {"connectivity_mimo.csv", p.mimo_configs, {p.speed_kmh}, {p.slot_s}},
        {"connectivity_speed.csv",
         {{p.focal_bs, p.focal_veh}},
         p.speeds_kmh,
         {p.slot_s}},
        {"connectivity_trto.csv",
         {{p.focal_bs, p.focal_veh}},
         {p.speed_kmh},
         p.slots_s},
    };

    for (const Variation& var : variations) {
      const auto grid = build_grid(p.densities_per_km, var.configs, var.speeds,
                                   var.slots, coverage);
      const auto metrics =
          metrics_sweep(grid, ctx.config.scenario, ctx.config.channel, sweep);
      CsvWriter csv(kMetricsHeader);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        append_metrics_row(csv, grid[i], metrics[i]);
      }
      emit(ctx, options.out_dir, var.file, csv.text());
    }
    finish(ctx, options.out_dir, "connectivity");
    return kExitOk;
  });
}

int cmd_throughput(const CommandOptions& options) {
  return guard("throughput", [&]() {
    CommandContext ctx = make_context(options, "throughput");
    ensure_out_dir(options.out_dir);
    const CoverageTable coverage = resolve_coverage(options, ctx.config);

    MetricsSweepOptions sweep;
    sweep.with_rate = true;
    sweep.rate_draws = ctx.config.rate_draws;
    sweep.seed = ctx.seed;
    sweep.jobs = options.jobs;

    const Preset& p = ctx.preset;

    // Density sweep at the focal configuration (Fig. 7 analog).
    {
      const auto grid =
          build_grid(p.densities_per_km, {{p.focal_bs, p.focal_veh}},
                     {p.speed_kmh}, {p.slot_s}, coverage);
      const auto metrics =
          metrics_sweep(grid, ctx.config.scenario, ctx.config.channel, sweep);
      CsvWriter csv(kMetricsHeader);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        append_metrics_row(csv, grid[i], metrics[i]);
      }
      emit(ctx, options.out_dir, "throughput.csv", csv.text());
      if (options.gnuplot) {
        emit(ctx, options.out_dir, "throughput.gp",
             gnuplot_script("throughput.csv", "rho_per_km", "throughput_bps"));
      }
    }

    // Configuration x speed table at the bar density (Fig. 8 analog).
    {
      const auto grid =
          build_grid({p.bar_density_per_km}, p.mimo_configs, p.speeds_kmh,
                     {p.slot_s}, coverage);
      const auto metrics =
          metrics_sweep(grid, ctx.config.scenario, ctx.config.channel, sweep);
      CsvWriter csv(kMetricsHeader);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        append_metrics_row(csv, grid[i], metrics[i]);
      }
      emit(ctx, options.out_dir, "throughput_fig8.csv", csv.text());
    }
    finish(ctx, options.out_dir, "throughput");
    return kExitOk;
  });
}

int cmd_validate(const CommandOptions& options) {
  int exit_code = kExitOk;
  const int rc = guard("validate", [&]() {
    CommandContext ctx = make_context(options, "validate");
    ensure_out_dir(options.out_dir);

    const double r_comm = ctx.config.r_comm_m.value_or(150.0);
    std::vector<ValidationPoint> grid;
    for (double rho_km : {5.0, 10.0, 20.0, 40.0, 80.0}) {
      for (double v_kmh : {30.0, 90.0, 130.0}) {
        for (double slot : {0.1, 0.2, 0.5}) {
          grid.push_back(ValidationPoint{nodes_per_km_to_per_m(rho_km),
                                         kmh_to_mps(v_kmh), slot, r_comm});
        }
      }
    }

    ValidationOptions vopt;
    vopt.n_slots = options.validate_slots;
    vopt.n_runs = options.validate_runs;
    vopt.seed = ctx.seed;
    vopt.jobs = options.jobs;
    vopt.analytic_perturbation = options.perturb_analytic;

    const auto rows = run_validation_grid(grid, ctx.config.scenario, vopt);

    CsvWriter csv({"rho_per_km", "speed_kmh", "slot_s", "r_comm_m", "metric",
                   "analytic", "empirical", "se", "z_score", "gated"});
    for (const ValidationRow& row : rows) {
      for (const MetricComparison& c : row.comparisons) {
        csv.add_row({CsvWriter::field(nodes_per_m_to_per_km(row.point.rho_per_m)),
                     CsvWriter::field(mps_to_kmh(row.point.speed_mps)),
                     CsvWriter::field(row.point.t_rto_s),
                     CsvWriter::field(row.point.r_comm_m), c.metric,
                     CsvWriter::field(c.analytic), CsvWriter::field(c.empirical),
                     CsvWriter::field(c.se), CsvWriter::field(c.z),
                     CsvWriter::field(c.gated)});
      }
    }
    emit(ctx, options.out_dir, "validation.csv", csv.text());

    if (options.dump_traces) {
      // First replication of each grid point, documented trace schema.
      for (std::size_t pi = 0; pi < grid.size(); ++pi) {
        ScenarioParams params = ctx.config.scenario;
        params.rho_per_m = grid[pi].rho_per_m;
        params.speed_mps = grid[pi].speed_mps;
        params.slot_duration_s = grid[pi].t_rto_s;
        const auto traces = simulate_road(
            params, grid[pi].r_comm_m,
            std::max<std::int64_t>(1000, vopt.n_slots / vopt.n_runs),
            mix_seed(ctx.seed, {0x76616c, pi, 0}));
        CsvWriter tcsv({"slot", "x_vehicle_m", "serving_distance_m",
                        "connected_at_start", "overtook", "connected_time_s"});
        for (const SlotTrace& t : traces) {
          tcsv.add_row({CsvWriter::field(t.slot),
                        CsvWriter::field(t.x_vehicle_m),
                        CsvWriter::field(t.serving_distance_m),
                        CsvWriter::field(t.connected_at_start),
                        CsvWriter::field(t.overtook),
                        CsvWriter::field(t.connected_time_s)});
        }
        std::ostringstream name;
        name << "traces_" << nodes_per_m_to_per_km(grid[pi].rho_per_m) << "km_"
             << mps_to_kmh(grid[pi].speed_mps) << "kmh_" << grid[pi].t_rto_s
             << "s.csv";
        emit(ctx, options.out_dir, name.str(), tcsv.text());
      }
    }

    const double worst = max_gated_z(rows);
    if (worst > 3.0) {
      std::cerr << "validation failed: max gated |z| = " << worst << "\n";
      for (const ValidationRow& row : rows) {
        for (const MetricComparison& c : row.comparisons) {
          if (c.gated && std::abs(c.z) > 3.0) {
            std::cerr << "  rho=" << nodes_per_m_to_per_km(row.point.rho_per_m)
                      << "/km V=" << mps_to_kmh(row.point.speed_mps)
                      << "km/h T=" << row.point.t_rto_s << "s " << c.metric
                      << ": analytic=" << c.analytic
                      << " empirical=" << c.empirical << " z=" << c.z << "\n";
          }
        }
      }
      exit_code = kExitValidation;
    } else {
      std::cout << "validation passed: max gated |z| = " << worst << "\n";
    }
    finish(ctx, options.out_dir, "validate");
    return kExitOk;
  });
  return rc != kExitOk ? rc : exit_code;
}

}  // namespace mmwv2i::tools
