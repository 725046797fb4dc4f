#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "sfc/sid/config.hpp"

namespace sfc::report {

inline constexpr const char* kVersionTag = "sfc-workbench 0.1.0";

// INI-style text: [section] headers and key = value lines. Unknown keys are
// rejected so typos do not silently fall back to defaults.
sid::RunConfig parse_config(std::istream& in);
sid::RunConfig parse_config_text(const std::string& text);
sid::RunConfig load_config(const std::string& path);

// Canonical dump covering every key; parse_config(to_ini(c)) == c.
std::string to_ini(const sid::RunConfig& config);

struct RunManifest {
  std::string config_hash;  // FNV-1a over the canonical config text
  std::vector<std::uint64_t> seeds;
  std::string version = kVersionTag;
  std::string env_name;
  std::string metrics_path;
  std::string checkpoint_path;
};

std::string config_hash(const sid::RunConfig& config);
RunManifest make_manifest(const sid::RunConfig& config, const std::string& out_dir);
void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

}  // namespace sfc::report
