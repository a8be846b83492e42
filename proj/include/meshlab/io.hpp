#pragma once

#include <filesystem>

#include <json.hpp>

#include "meshlab/engine.hpp"
#include "meshlab/topology.hpp"

// JSON encodings shared by layout, scenario and report files.
namespace meshlab {

nlohmann::json layout_to_json(const NetworkLayout& layout);
/// Throws ParseError on malformed structure. Does not validate invariants.
NetworkLayout layout_from_json(const nlohmann::json& j);

NetworkLayout read_layout(const std::filesystem::path& path);
void write_layout(const NetworkLayout& layout, const std::filesystem::path& path);

nlohmann::json config_to_json(const SimConfig& config);
/// Applies the keys present in `j` on top of `base`. Unknown keys are a ParseError.
SimConfig config_from_json(const nlohmann::json& j, SimConfig base = {});

nlohmann::json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace meshlab
