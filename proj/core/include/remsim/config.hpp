#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "remsim/simcore.hpp"

namespace remsim {

inline constexpr int kConfigSchemaVersion = 1;

/// Parses a JSON config. Every key is optional except schema_version;
/// unknown keys are rejected. Overrides are "dotted.key=value" strings
/// applied before validation; the value is read as JSON and falls back to
/// a plain string. Errors are ConfigError naming the line or field.
SimulationConfig parse_config(const std::string& text, const std::string& source_name = "<config>",
                              std::span<const std::string> overrides = {});

SimulationConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides = {});

/// Canonical compact JSON of the whole config (CQI table inlined), which
/// parse_config reads back to an equal config.
std::string config_to_json(const SimulationConfig& config, int indent = -1);

/// FNV-1a 64 of config_to_json.
std::uint64_t config_hash(const SimulationConfig& config);
std::string hash_hex(std::uint64_t hash);

}  // namespace remsim
