#include "meshlab/scenario.hpp"

#include <cstdlib>

#include "meshlab/error.hpp"
#include "meshlab/io.hpp"

#ifndef MESHLAB_DATA_DIR
#define MESHLAB_DATA_DIR "data"
#endif

namespace meshlab {

using nlohmann::json;
namespace fs = std::filesystem;

void Scenario::validate() const {
  layout.validate();
  config.validate();
  if (!layout.contains(src)) throw ValidationError("src " + std::to_string(src.value) + " is not in the layout");
  if (!layout.contains(dst)) throw ValidationError("dst " + std::to_string(dst.value) + " is not in the layout");
  if (layout.role(src) != Role::Coordinator) {
    throw ValidationError("src " + std::to_string(src.value) + " is not the coordinator");
  }
  if (src == dst) throw ValidationError("src and dst must differ");
  for (const auto& f : forced_depletions) {
    if (!layout.contains(f.node)) {
      throw ValidationError("forced depletion names unknown node " + std::to_string(f.node.value));
    }
    if (f.tick == 0 || f.tick > config.total_transmissions) {
      throw ValidationError("forced depletion tick " + std::to_string(f.tick) + " outside the run");
    }
  }
}

std::string_view scenario_name(StockScenario kind) noexcept {
  switch (kind) {
    case StockScenario::CenterV1: return "center-v1";
    case StockScenario::CenterV2: return "center-v2";
    case StockScenario::CornerV1: return "corner-v1";
    case StockScenario::CornerV2: return "corner-v2";
  }
  return "";
}

std::optional<StockScenario> parse_scenario_name(std::string_view name) noexcept {
  for (auto k : {StockScenario::CenterV1, StockScenario::CenterV2, StockScenario::CornerV1, StockScenario::CornerV2}) {
    if (scenario_name(k) == name) return k;
  }
  return std::nullopt;
}

fs::path default_data_dir() {
  if (const char* env = std::getenv("MESHLAB_DATA"); env && *env) return env;
  return MESHLAB_DATA_DIR;
}

json scenario_to_json(const Scenario& s) {
  json j = {{"label", s.label}, {"layout_file", s.layout_file}, {"src", s.src.value},
            {"dst", s.dst.value}, {"config", config_to_json(s.config)}};
  if (!s.forced_depletions.empty()) {
    json forced = json::array();
    for (const auto& f : s.forced_depletions) forced.push_back({{"tick", f.tick}, {"node", f.node.value}});
    j["forced_depletions"] = forced;
  }
  return j;
}

Scenario scenario_from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ParseError("scenario must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "label" && key != "layout_file" && key != "src" && key != "dst" && key != "config" &&
        key != "forced_depletions") {
      throw ParseError("unknown key '" + key + "' in scenario");
    }
  }
  Scenario s;
  try {
    s.label = j.at("label").get<std::string>();
    s.layout_file = j.at("layout_file").get<std::string>();
    s.src = NodeId{j.value("src", 1u)};
    s.dst = NodeId{j.at("dst").get<std::uint32_t>()};
    if (j.contains("forced_depletions")) {
      for (const auto& f : j.at("forced_depletions")) {
        s.forced_depletions.push_back({f.at("tick").get<std::uint64_t>(), NodeId{f.at("node").get<std::uint32_t>()}});
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (j.contains("config")) s.config = config_from_json(j.at("config"));

  fs::path layout_path = s.layout_file;
  if (layout_path.is_relative()) layout_path = base_dir / layout_path;
  if (!fs::exists(layout_path)) throw MissingLayout("layout file " + layout_path.string() + " not found");
  s.layout = read_layout(layout_path);
  s.validate();
  return s;
}

Scenario load_scenario(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("scenario file " + path.string() + " not found");
  return scenario_from_json(read_json(path), path.parent_path());
}

void save_scenario(const Scenario& s, const fs::path& path) {
  write_text(path, scenario_to_json(s).dump(2) + "\n");
}

Scenario stock_scenario(StockScenario kind, const fs::path& data_dir) {
  const fs::path file = data_dir / "scenarios" / (std::string(scenario_name(kind)) + ".json");
  if (!fs::exists(file)) throw MissingLayout("packaged scenario " + file.string() + " not found");
  Scenario s = load_scenario(file);
  s.layout.validate(RoleCensus{});
  return s;
}

Scenario resolve_scenario(const std::string& name_or_path) {
  if (auto kind = parse_scenario_name(name_or_path)) return stock_scenario(*kind);
  return load_scenario(name_or_path);
}

std::vector<PublishedRouteSum> published_route_sums(StockNetwork network) {
  auto leg = [](std::uint32_t a, std::uint32_t b, double d) { return PublishedLeg{NodeId{a}, NodeId{b}, d}; };
  if (network == StockNetwork::Center) {
    return {
        {"First Route", {leg(1, 2, 122.0656), leg(2, 8, 100)}, "222.0656"},
        {"Second Route", {leg(1, 3, 128.0625), leg(3, 8, 180.2776)}, "308.3401"},
        {"Other Routes", {leg(1, 2, 122.0656), leg(2, 3, 150), leg(3, 8, 180.2776)}, "452.3432"},
    };
  }
  return {
      {"First Route", {leg(1, 6, 100), leg(6, 7, 111.8034), leg(7, 2, 111.8034), leg(2, 8, 100)}, "423.6068"},
      {"Second Route", {leg(5, 1, 180.2776), leg(5, 4, 111.8034), leg(4, 3, 111.8034), leg(3, 8, 180.2776)}, "584.16"},
      {"Other Routes",
       {leg(1, 6, 100), leg(6, 5, 150), leg(5, 4, 111.8034), leg(4, 3, 111.8034), leg(3, 8, 180.2776)},
       "473.081"},
  };
}

}  // namespace meshlab
