#pragma once

#include <filesystem>

#include <json.hpp>

#include "grnconv/distribution.hpp"
#include "grnconv/quantum.hpp"

// {"probs": [...]} or {"levels": [[p, mult], ...]} for distributions;
// {"amplitudes": [[[re, im], ...], ...]} and/or {"schmidt_sq": [...]} for states.
namespace grnconv::json_io {

Distribution parse_distribution(const nlohmann::json& j);
quantum::PureState parse_state(const nlohmann::json& j);

nlohmann::json to_json(const Distribution& p);

/// ConfigError on unreadable files or malformed JSON.
nlohmann::json read_file(const std::filesystem::path& path);
Distribution read_distribution(const std::filesystem::path& path);
quantum::PureState read_state(const std::filesystem::path& path);

}  // namespace grnconv::json_io
