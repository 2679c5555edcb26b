#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qgspec::cli {

enum class Command { fusion, walk, semidirect, bicrossed, sweep };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

/// Everything a run depends on. Fields that do not apply to the command are
/// echoed with their defaults.
struct RunConfig {
  Command command = Command::fusion;
  double tolerance = 1e-2;
  double eig_tol = 1e-8;
  int max_iter = 5000;
  // fusion: {trunc}; walk: radii; bicrossed: lattice bounds; sweep: sizes
  std::vector<long> truncations;
  std::uint64_t seed = 0x5eed2024u;
  std::optional<std::string> output_path;
  std::optional<std::string> csv_prefix;
  bool timing = false;
  bool parallel = false;

  // fusion, sweep over fusion
  std::string ring = "free-su2";  // rule name or descriptor path
  double n = 2.0;
  std::optional<int> level;       // default: largest truncation - 1
  std::vector<std::string> omega_labels{"a1"};

  // walk, sweep over walk
  std::string group = "Z^d:2";
  std::vector<int> omega_letters;  // empty: every generator (or {0} for the trivial group)

  // semidirect
  double interval_a = 0.0;
  double interval_b = 1.0;
  double grid_h = 1.0 / 64;
  double grid_max_r = 64.0;
  std::vector<double> witness_m{2, 4, 8};

  // bicrossed
  std::vector<std::pair<int, int>> omega_pairs{{1, 0}, {-1, 0}};
  double p = 1.0;

  // sweep
  std::string sweep_target = "fusion";  // "fusion" or "walk"

  bool emit_csv() const { return csv_prefix.has_value(); }
  /// Throws input_error on a violated invariant.
  void validate() const;
};

nlohmann::json to_json(const RunConfig& c);
/// Missing keys keep the defaults of `base`; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& doc, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

}  // namespace qgspec::cli
