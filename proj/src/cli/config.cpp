#include "qgspec/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "qgspec/core/errors.hpp"

namespace qgspec::cli {

using nlohmann::json;

std::string to_string(Command c) {
  switch (c) {
    case Command::fusion: return "fusion";
    case Command::walk: return "walk";
    case Command::semidirect: return "semidirect";
    case Command::bicrossed: return "bicrossed";
    case Command::sweep: return "sweep";
  }
  return "?";
}

Command command_from_string(const std::string& name) {
  for (Command c : {Command::fusion, Command::walk, Command::semidirect, Command::bicrossed, Command::sweep})
    if (to_string(c) == name) return c;
  throw input_error("unknown command '" + name + "'");
}

void RunConfig::validate() const {
  if (!(tolerance > 0) || !std::isfinite(tolerance)) throw input_error("tolerance must be > 0");
  if (!(eig_tol > 0) || !std::isfinite(eig_tol)) throw input_error("eig_tol must be > 0");
  if (max_iter <= 0) throw input_error("max_iter must be > 0");
  if (command == Command::semidirect) return;
  if (truncations.empty()) throw input_error("no truncation given");
  const long min_size = command == Command::walk || (command == Command::sweep && sweep_target == "walk") ? 0 : 1;
  for (std::size_t i = 0; i < truncations.size(); ++i) {
    if (truncations[i] < min_size) throw input_error("truncations must be positive");
    if (i > 0 && truncations[i] <= truncations[i - 1])
      throw input_error("truncations must be strictly increasing");
  }
  if (command == Command::fusion && truncations.size() != 1)
    throw input_error("fusion takes a single truncation");
  if (command == Command::sweep && sweep_target != "fusion" && sweep_target != "walk")
    throw input_error("sweep target must be 'fusion' or 'walk'");
}

namespace {

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
void read(const json& doc, const char* key, T& out) {
  if (auto it = doc.find(key); it != doc.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw parse_error(std::string("config field '") + key + "': " + e.what());
    }
  }
}

template <class T>
void read_opt(const json& doc, const char* key, std::optional<T>& out) {
  if (auto it = doc.find(key); it != doc.end()) {
    if (it->is_null()) {
      out.reset();
    } else {
      T v{};
      read(doc, key, v);
      out = v;
    }
  }
}

}  // namespace

json to_json(const RunConfig& c) {
  json pairs = json::array();
  for (auto [r, rp] : c.omega_pairs) pairs.push_back({r, rp});
  return {
      {"command", to_string(c.command)},
      {"tolerance", c.tolerance},
      {"eig_tol", c.eig_tol},
      {"max_iter", c.max_iter},
      {"truncations", c.truncations},
      {"seed", c.seed},
      {"output_path", opt(c.output_path)},
      {"csv_prefix", opt(c.csv_prefix)},
      {"timing", c.timing},
      {"parallel", c.parallel},
      {"ring", c.ring},
      {"N", c.n},
      {"level", opt(c.level)},
      {"omega_labels", c.omega_labels},
      {"group", c.group},
      {"omega_letters", c.omega_letters},
      {"interval", {c.interval_a, c.interval_b}},
      {"grid", {c.grid_h, c.grid_max_r}},
      {"witness_m", c.witness_m},
      {"omega_pairs", pairs},
      {"p", c.p},
      {"sweep_target", c.sweep_target},
  };
}

RunConfig config_from_json(const json& doc, RunConfig c) {
  if (!doc.is_object()) throw parse_error("config must be an object");
  static const std::set<std::string> known = {
      "command", "tolerance", "eig_tol", "max_iter", "truncations", "seed", "output_path",
      "csv_prefix", "timing", "parallel", "ring", "N", "level", "omega_labels", "group",
      "omega_letters", "interval", "grid", "witness_m", "omega_pairs", "p", "sweep_target"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) throw parse_error("unknown config field '" + key + "'");

  if (auto it = doc.find("command"); it != doc.end()) {
    if (!it->is_string()) throw parse_error("config field 'command' must be a string");
    c.command = command_from_string(it->get<std::string>());
  }
  read(doc, "tolerance", c.tolerance);
  read(doc, "eig_tol", c.eig_tol);
  read(doc, "max_iter", c.max_iter);
  read(doc, "truncations", c.truncations);
  read(doc, "seed", c.seed);
  read_opt(doc, "output_path", c.output_path);
  read_opt(doc, "csv_prefix", c.csv_prefix);
  read(doc, "timing", c.timing);
  read(doc, "parallel", c.parallel);
  read(doc, "ring", c.ring);
  read(doc, "N", c.n);
  read_opt(doc, "level", c.level);
  read(doc, "omega_labels", c.omega_labels);
  read(doc, "group", c.group);
  read(doc, "omega_letters", c.omega_letters);
  std::pair<double, double> interval{c.interval_a, c.interval_b}, grid{c.grid_h, c.grid_max_r};
  read(doc, "interval", interval);
  read(doc, "grid", grid);
  std::tie(c.interval_a, c.interval_b) = interval;
  std::tie(c.grid_h, c.grid_max_r) = grid;
  read(doc, "witness_m", c.witness_m);
  read(doc, "omega_pairs", c.omega_pairs);
  read(doc, "p", c.p);
  read(doc, "sweep_target", c.sweep_target);
  return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot read config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
  return config_from_json(doc, std::move(base));
}

}  // namespace qgspec::cli
