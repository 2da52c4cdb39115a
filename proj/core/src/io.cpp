// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the mmwv2i authors

#include "mmwv2i/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#ifndef MMWV2I_VERSION
#define MMWV2I_VERSION "0.0.0"
#endif

namespace mmwv2i {

CsvWriter::CsvWriter(std::vector<std::string> header)
    : columns_(header.size()) {
  if (header.empty()) {
    throw std::invalid_argument("CSV header must not be empty");
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw std::invalid_argument("CSV row width does not match the header");
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) text_ += ',';
    text_ += fields[i];
  }
  text_ += '\n';
  ++rows_;
}

std::string CsvWriter::field(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string CsvWriter::field(int value) { return std::to_string(value); }
std::string CsvWriter::field(std::int64_t value) { return std::to_string(value); }
std::string CsvWriter::field(std::uint64_t value) { return std::to_string(value); }
std::string CsvWriter::field(bool value) { return value ? "1" : "0"; }

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

std::string manifest_to_json(const RunManifest& manifest) {
  nlohmann::json j;
  j["tool_version"] = manifest.tool_version;
  j["command"] = manifest.command;
  j["config_hash"] = manifest.config_hash;
  j["seed"] = manifest.seed;
  j["outputs"] = manifest.output_checksums;
  j["wall_clock_s"] = manifest.wall_clock_s;
  return j.dump(2) + "\n";
}

const char* version() { return MMWV2I_VERSION; }

}  // namespace mmwv2i
