// SPDX-License-Identifier: Apache-2.0
//
// mmwv2i - coverage and connectivity toolkit for mmWave V2I links
// Copyright (c) 2026 the mmwv2i authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>

// All quantities inside the library are SI (meters, seconds, hertz).
// Decibel quantities carry an explicit _db / _dbm suffix and are converted
// to linear scale only at module boundaries.

namespace mmwv2i {

inline constexpr double kSpeedOfLightMps = 299792458.0;
inline constexpr double kPi = std::numbers::pi;

/// Thermal noise density at room temperature, dBm/Hz.
inline constexpr double kThermalNoiseDbmPerHz = -174.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle to [-pi, pi).
inline double wrap_angle(double rad) {
  double w = std::remainder(rad, 2.0 * kPi);
  if (w >= kPi) w -= 2.0 * kPi;  // remainder returns (-pi, pi], fold the edge
  return w;
}

inline double nodes_per_km_to_per_m(double per_km) { return per_km / 1000.0; }
inline double nodes_per_m_to_per_km(double per_m) { return per_m * 1000.0; }

inline double kmh_to_mps(double kmh) { return kmh / 3.6; }
inline double mps_to_kmh(double mps) { return mps * 3.6; }

inline double ghz_to_hz(double ghz) { return ghz * 1e9; }
inline double hz_to_ghz(double hz) { return hz / 1e9; }

}  // namespace mmwv2i
