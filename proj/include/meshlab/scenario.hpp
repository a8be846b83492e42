#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "meshlab/engine.hpp"
#include "meshlab/topology.hpp"

namespace meshlab {

struct Scenario {
  std::string label;
  /// As written in the scenario file; relative paths resolve against the file's directory.
  std::string layout_file;
  NetworkLayout layout;
  NodeId src{1};
  NodeId dst{8};
  SimConfig config;
  std::vector<ForcedDepletion> forced_depletions;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;

  SimReport run() const { return meshlab::run(layout, src, dst, config, forced_depletions); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// The stock study: coordinator at the center or in a corner, version 1 keeping
/// the first route for the whole run and version 2 failing over once a route
/// node drops below the threshold.
enum class StockScenario { CenterV1, CenterV2, CornerV1, CornerV2 };

std::string_view scenario_name(StockScenario kind) noexcept;
std::optional<StockScenario> parse_scenario_name(std::string_view name) noexcept;

/// Directory holding layouts/, scenarios/ and constraints/. MESHLAB_DATA
/// overrides the location compiled in at build time.
std::filesystem::path default_data_dir();

/// Throws MissingLayout when the packaged files are absent.
Scenario stock_scenario(StockScenario kind, const std::filesystem::path& data_dir = default_data_dir());

/// Throws IoError, ParseError, ValidationError, MissingLayout.
Scenario load_scenario(const std::filesystem::path& path);

/// Accepts a built-in alias (center-v1, ...) or a scenario file path.
Scenario resolve_scenario(const std::string& name_or_path);

nlohmann::json scenario_to_json(const Scenario& s);
/// `base_dir` resolves a relative layout_file.
Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// A reference route-distance table: per-leg distances and the printed total,
/// kept verbatim so sums can be re-checked.
struct PublishedLeg {
  NodeId a;
  NodeId b;
  double distance = 0.0;
};

struct PublishedRouteSum {
  std::string label;
  std::vector<PublishedLeg> legs;
  std::string printed_sum;
};

enum class StockNetwork { Center, Corner };

std::vector<PublishedRouteSum> published_route_sums(StockNetwork network);

}  // namespace meshlab
