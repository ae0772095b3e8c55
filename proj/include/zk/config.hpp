#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "zk/experiments.hpp"

namespace zk {

inline constexpr const char* kVersion = "0.3.1";

// Unknown keys and out-of-range values raise ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const ExperimentConfig& cfg);

}  // namespace zk
