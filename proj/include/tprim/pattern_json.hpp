#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tprim/pattern.hpp"

namespace tprim {

/// Pattern-tensor JSON: {"order": m, "dim": n, "entries": [[i_1, ..., i_m], ...]}
/// with 1-based indices. Other keys (including "values") are ignored.
/// Malformed documents throw ParseError; bad shapes or indices throw the
/// make_pattern_tensor errors.
PatternTensor tensor_from_json(const nlohmann::json& doc);
nlohmann::json tensor_to_json(const PatternTensor& t);

PatternTensor parse_tensor(const std::string& text);
PatternTensor read_tensor_file(const std::filesystem::path& path);
void write_tensor_file(const std::filesystem::path& path, const PatternTensor& t);

/// A replay file is a JSON array of pattern-tensor objects.
std::vector<PatternTensor> read_replay_file(const std::filesystem::path& path);

}  // namespace tprim
