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
#include <map>
#include <string>
#include <vector>

namespace mmwv2i {

/// Minimal deterministic CSV writer: fixed header, fields rendered with
/// shortest round-trip formatting, so identical values give identical bytes.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(const std::vector<std::string>& fields);

  const std::string& text() const { return text_; }
  std::size_t rows() const { return rows_; }

  /// Formats a double with round-trip precision ("nan" for NaN).
  static std::string field(double value);
  static std::string field(int value);
  static std::string field(std::int64_t value);
  static std::string field(std::uint64_t value);
  static std::string field(bool value);

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

/// Writes a file atomically-ish (truncate + write); throws std::runtime_error
/// with the path on failure.
void write_file(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

/// FNV-1a 64-bit checksum, hex-encoded.
std::string fnv1a_hex(const std::string& bytes);

/// Provenance record of one command invocation. Reruns with identical
/// config and seed reproduce identical per-output checksums.
struct RunManifest {
  std::string tool_version;
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> output_checksums;  // file name -> fnv1a
  double wall_clock_s = 0.0;
};

std::string manifest_to_json(const RunManifest& manifest);

/// Library version string.
const char* version();

}  // namespace mmwv2i
