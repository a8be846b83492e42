#include "meshlab/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "meshlab/error.hpp"

namespace meshlab {

using nlohmann::json;

namespace {

template <typename T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = get<T>(j, key);
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* where) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw ParseError(std::string("unknown key '") + key + "' in " + where);
  }
}

}  // namespace

json layout_to_json(const NetworkLayout& layout) {
  json nodes = json::array();
  for (const auto& n : layout.nodes) {
    nodes.push_back({{"id", n.id.value}, {"role", std::string(to_string(n.role))},
                     {"x", n.position.x}, {"y", n.position.y}});
  }
  return {{"area_side", layout.area_side}, {"radio_range", layout.radio_range}, {"nodes", nodes}};
}

NetworkLayout layout_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("layout must be a JSON object");
  NetworkLayout layout;
  maybe(j, "area_side", layout.area_side);
  maybe(j, "radio_range", layout.radio_range);
  if (!j.contains("nodes") || !j["nodes"].is_array()) throw ParseError("layout needs a 'nodes' array");
  for (const auto& n : j["nodes"]) {
    if (!n.is_object()) throw ParseError("layout node must be an object");
    Node node;
    node.id = NodeId{get<std::uint32_t>(n, "id")};
    node.role = parse_role(get<std::string>(n, "role"));
    node.position = {get<double>(n, "x"), get<double>(n, "y")};
    layout.nodes.push_back(node);
  }
  std::sort(layout.nodes.begin(), layout.nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  return layout;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

NetworkLayout read_layout(const std::filesystem::path& path) {
  try {
    return layout_from_json(read_json(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_layout(const NetworkLayout& layout, const std::filesystem::path& path) {
  write_text(path, layout_to_json(layout).dump(2) + "\n");
}

json config_to_json(const SimConfig& c) {
  const auto& m = c.metadata;
  return {
      {"total_transmissions", c.total_transmissions},
      {"tick_duration", c.tick_duration},
      {"bits_per_packet", c.bits_per_packet},
      {"initial_voltage", c.initial_voltage},
      {"threshold", c.decay.threshold},
      {"reference_voltage", c.reference_voltage},
      {"k_routes", c.k_routes},
      {"failover", c.failover},
      {"sampling_stride", c.sampling_stride},
      {"decay",
       {{"delta_forward", c.decay.delta_forward},
        {"delta_maintenance", c.decay.delta_maintenance},
        {"delta_receive", c.decay.delta_receive},
        {"delta_idle", c.decay.delta_idle}}},
      {"metadata",
       {{"frequency_hz", m.frequency_hz},
        {"modulation", m.modulation},
        {"transmit_power_w", m.transmit_power_w},
        {"received_power", m.received_power},
        {"operating_voltage_min", m.operating_voltage_min},
        {"operating_voltage_max", m.operating_voltage_max}}},
  };
}

SimConfig config_from_json(const json& j, SimConfig c) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  reject_unknown(j,
                 {"total_transmissions", "tick_duration", "bits_per_packet", "initial_voltage", "threshold",
                  "reference_voltage", "k_routes", "failover", "sampling_stride", "decay", "metadata"},
                 "config");
  maybe(j, "total_transmissions", c.total_transmissions);
  maybe(j, "tick_duration", c.tick_duration);
  maybe(j, "bits_per_packet", c.bits_per_packet);
  maybe(j, "initial_voltage", c.initial_voltage);
  maybe(j, "threshold", c.decay.threshold);
  maybe(j, "reference_voltage", c.reference_voltage);
  maybe(j, "k_routes", c.k_routes);
  maybe(j, "failover", c.failover);
  maybe(j, "sampling_stride", c.sampling_stride);
  if (j.contains("decay")) {
    const auto& d = j["decay"];
    if (!d.is_object()) throw ParseError("config.decay must be an object");
    reject_unknown(d, {"delta_forward", "delta_maintenance", "delta_receive", "delta_idle"}, "config.decay");
    maybe(d, "delta_forward", c.decay.delta_forward);
    maybe(d, "delta_maintenance", c.decay.delta_maintenance);
    maybe(d, "delta_receive", c.decay.delta_receive);
    maybe(d, "delta_idle", c.decay.delta_idle);
  }
  if (j.contains("metadata")) {
    const auto& m = j["metadata"];
    if (!m.is_object()) throw ParseError("config.metadata must be an object");
    reject_unknown(m,
                   {"frequency_hz", "modulation", "transmit_power_w", "received_power", "operating_voltage_min",
                    "operating_voltage_max"},
                   "config.metadata");
    maybe(m, "frequency_hz", c.metadata.frequency_hz);
    maybe(m, "modulation", c.metadata.modulation);
    maybe(m, "transmit_power_w", c.metadata.transmit_power_w);
    maybe(m, "received_power", c.metadata.received_power);
    maybe(m, "operating_voltage_min", c.metadata.operating_voltage_min);
    maybe(m, "operating_voltage_max", c.metadata.operating_voltage_max);
  }
  return c;
}

}  // namespace meshlab
