// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include "mmwv2i/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "mmwv2i/units.hpp"

namespace mmwv2i {

namespace {

using nlohmann::json;

double get_number(const json& j, const char* key, double fallback,
                  bool required) {
  if (!j.contains(key)) {
    if (required) {
      throw std::invalid_argument(std::string("config: missing key '") + key +
                                  "'");
    }
    return fallback;
  }
  if (!j.at(key).is_number()) {
    throw std::invalid_argument(std::string("config: key '") + key +
                                "' must be a number");
  }
  return j.at(key).get<double>();
}

std::array<int, 2> get_array2(const json& j, const char* key,
                              std::array<int, 2> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer()) {
    throw std::invalid_argument(std::string("config: key '") + key +
                                "' must be [rows, cols]");
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

void apply_channel_overrides(const json& j, ChannelParams& ch) {
  ch.los.alpha_db = get_number(j, "alpha_los_db", ch.los.alpha_db, false);
  ch.los.beta = get_number(j, "beta_los", ch.los.beta, false);
  ch.los.shadow_sigma_db =
      get_number(j, "sigma_los_db", ch.los.shadow_sigma_db, false);
  ch.nlos.alpha_db = get_number(j, "alpha_nlos_db", ch.nlos.alpha_db, false);
  ch.nlos.beta = get_number(j, "beta_nlos", ch.nlos.beta, false);
  ch.nlos.shadow_sigma_db =
      get_number(j, "sigma_nlos_db", ch.nlos.shadow_sigma_db, false);
  ch.clusters.lambda_clusters =
      get_number(j, "lambda_clusters", ch.clusters.lambda_clusters, false);
  if (j.contains("rms_angle_spread_deg")) {
    ch.clusters.rms_angle_spread_rad =
        deg_to_rad(get_number(j, "rms_angle_spread_deg", 0.0, true));
  }
  ch.state.a_out_per_m = get_number(j, "a_out", ch.state.a_out_per_m, false);
  ch.state.b_out = get_number(j, "b_out", ch.state.b_out, false);
  ch.state.a_los_per_m = get_number(j, "a_los", ch.state.a_los_per_m, false);

  if (ch.state.a_out_per_m <= 0.0) {
    throw std::invalid_argument("config: channel.a_out must be > 0");
  }
  if (ch.state.a_los_per_m <= 0.0) {
    throw std::invalid_argument("config: channel.a_los must be > 0");
  }
  if (ch.los.beta <= 0.0 || ch.nlos.beta <= 0.0) {
    throw std::invalid_argument("config: pathloss slope beta must be > 0");
  }
  if (ch.los.shadow_sigma_db < 0.0 || ch.nlos.shadow_sigma_db < 0.0) {
    throw std::invalid_argument("config: shadowing sigma must be >= 0");
  }
}

SimulationConfig from_json(const json& j) {
  SimulationConfig cfg;
  cfg.raw.rho_per_km = get_number(j, "rho_per_km", cfg.raw.rho_per_km, true);
  cfg.raw.speed_kmh = get_number(j, "speed_kmh", cfg.raw.speed_kmh, true);
  cfg.raw.slot_s = get_number(j, "slot_s", cfg.raw.slot_s, true);
  cfg.raw.fc_ghz = get_number(j, "fc_ghz", cfg.raw.fc_ghz, true);
  cfg.raw.bw_ghz = get_number(j, "bw_ghz", cfg.raw.bw_ghz, true);
  cfg.raw.ptx_dbm = get_number(j, "ptx_dbm", cfg.raw.ptx_dbm, true);
  cfg.raw.nf_db = get_number(j, "nf_db", cfg.raw.nf_db, true);
  cfg.raw.sinr_thresh_db =
      get_number(j, "sinr_thresh_db", cfg.raw.sinr_thresh_db, true);
  cfg.raw.bs_array = get_array2(j, "bs_array", cfg.raw.bs_array);
  cfg.raw.veh_array = get_array2(j, "veh_array", cfg.raw.veh_array);
  cfg.raw.road_m = get_number(j, "road_m", cfg.raw.road_m, true);
  if (j.contains("seed")) {
    cfg.raw.seed = j.at("seed").get<std::uint64_t>();
  }

  cfg.scenario = convert_units(cfg.raw);

  if (j.contains("channel")) {
    apply_channel_overrides(j.at("channel"), cfg.channel);
  }

  if (j.contains("densities_per_km")) {
    cfg.densities_per_km = j.at("densities_per_km").get<std::vector<double>>();
    for (double d : cfg.densities_per_km) {
      if (d <= 0.0) {
        throw std::invalid_argument(
            "config: densities_per_km entries must be > 0");
      }
    }
  } else {
    for (int d = 10; d <= 100; d += 10) cfg.densities_per_km.push_back(d);
  }

  if (j.contains("r_comm_m")) {
    cfg.r_comm_m = j.at("r_comm_m").get<double>();
    if (*cfg.r_comm_m <= 0.0) {
      throw std::invalid_argument("config: r_comm_m must be > 0");
    }
  }
  cfg.trials = static_cast<int>(get_number(j, "trials", cfg.trials, false));
  cfg.rate_draws =
      static_cast<int>(get_number(j, "rate_draws", cfg.rate_draws, false));
  if (cfg.trials < 100) {
    throw std::invalid_argument("config: trials must be >= 100");
  }
  if (cfg.rate_draws < 1) {
    throw std::invalid_argument("config: rate_draws must be >= 1");
  }
  return cfg;
}

}  // namespace

SimulationConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                e.what());
  }
  return from_json(j);
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config(text);
}

SimulationConfig default_config() {
  SimulationConfig cfg;
  cfg.scenario = convert_units(cfg.raw);
  for (int d = 10; d <= 100; d += 10) cfg.densities_per_km.push_back(d);
  return cfg;
}

}  // namespace mmwv2i
