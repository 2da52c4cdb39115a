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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mmwv2i {

// Stream tags keep the per-module substreams of one base seed disjoint.
// Every Monte Carlo unit of work (a trial, a run, a draw) derives its own
// generator from (seed, tag, indices...), so results do not depend on how
// the work is scheduled across threads.
enum class RngStream : std::uint64_t {
  kDrop = 1,
  kLinkState = 2,
  kClusters = 3,
  kChannel = 4,
  kCoverage = 5,
  kRoadSim = 6,
  kRate = 7,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Mixes a base seed with an arbitrary list of stream coordinates.
inline std::uint64_t mix_seed(std::uint64_t seed,
                              std::initializer_list<std::uint64_t> stream) {
  std::uint64_t h = splitmix64(seed ^ 0x6D6D77763269ULL);
  for (std::uint64_t v : stream) {
    h = splitmix64(h ^ v);
  }
  return h;
}

/// Independent generator for the given stream coordinates.
inline std::mt19937_64 make_rng(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> stream) {
  return std::mt19937_64(mix_seed(seed, stream));
}

inline std::mt19937_64 make_rng(std::uint64_t seed, RngStream tag,
                                std::uint64_t index = 0) {
  return make_rng(seed, {static_cast<std::uint64_t>(tag), index});
}

}  // namespace mmwv2i
