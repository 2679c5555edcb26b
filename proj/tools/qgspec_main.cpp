// qgspec: command-line front end. See README.md for the flags.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qgspec/cli/config.hpp"
#include "qgspec/cli/report.hpp"
#include "qgspec/cli/run.hpp"
#include "qgspec/core/errors.hpp"

using namespace qgspec;
using namespace qgspec::cli;

namespace {

std::pair<double, double> split_pair(const std::string& text, char sep, const char* what) {
  const auto pos = text.find(sep);
  try {
    if (pos == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, pos), b = text.substr(pos + 1);
    const double x = std::stod(a, &used_a), y = std::stod(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::logic_error&) {
    throw input_error(std::string("bad ") + what + " '" + text + "' (expected x" + sep + "y)");
  }
}

std::pair<int, int> int_pair(const std::string& text) {
  const auto [a, b] = split_pair(text, ',', "shift pair");
  if (a != static_cast<int>(a) || b != static_cast<int>(b)) throw input_error("shift pair must be integers: " + text);
  return {static_cast<int>(a), static_cast<int>(b)};
}

void emit(const nlohmann::json& doc, const std::optional<std::string>& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path) {
    std::ofstream out(*path);
    if (!out) throw input_error("cannot write " + *path);
    out << text;
  } else {
    std::cout << text;
  }
}

std::vector<long> default_truncations(const RunConfig& c) {
  switch (c.command) {
    case Command::fusion: return {200};
    case Command::walk: return {10};
    case Command::semidirect: return {};
    case Command::bicrossed: return {10, 20, 40};
    case Command::sweep: return c.sweep_target == "walk" ? std::vector<long>{5, 10, 20} : std::vector<long>{10, 100, 1000};
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral coamenability tests for the convolution operators L_kappa and L_nu"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration (default: $QGSPEC_CONFIG)");

  struct Flags {
    double tol = 0, eig_tol = 0;
    int max_iter = 0;
    std::uint64_t seed = 0;
    std::string output, csv;
    bool timing = false, parallel = false;
    std::string ring, target;
    double n = 0, p = 0;
    int level = 0;
    std::vector<std::string> labels, pairs;
    std::string group, interval, grid;
    std::vector<int> letters;
    std::vector<long> sizes;
    std::vector<double> ms;
  } f;

  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration (default: $QGSPEC_CONFIG)");
    overrides.emplace_back(sub->add_option("--tol", f.tol, "certification tolerance"),
                           [&](RunConfig& c) { c.tolerance = f.tol; });
    overrides.emplace_back(sub->add_option("--eig-tol", f.eig_tol, "eigen-iteration tolerance"),
                           [&](RunConfig& c) { c.eig_tol = f.eig_tol; });
    overrides.emplace_back(sub->add_option("--max-iter", f.max_iter, "eigen-iteration budget"),
                           [&](RunConfig& c) { c.max_iter = f.max_iter; });
    overrides.emplace_back(sub->add_option("--seed", f.seed, "Lanczos start-vector seed"),
                           [&](RunConfig& c) { c.seed = f.seed; });
    overrides.emplace_back(sub->add_option("-o,--output", f.output, "report path (default: stdout)"),
                           [&](RunConfig& c) { c.output_path = f.output; });
    overrides.emplace_back(sub->add_option("--csv", f.csv, "write PREFIX_eigenvalues.csv and PREFIX_trace.csv"),
                           [&](RunConfig& c) { c.csv_prefix = f.csv; });
    overrides.emplace_back(sub->add_flag("--timing", f.timing, "include wall time in the report"),
                           [&](RunConfig& c) { c.timing = f.timing; });
  };
  auto ring_flags = [&](CLI::App* sub) {
    overrides.emplace_back(sub->add_option("--ring", f.ring, "'free-su2' or a ring descriptor file"),
                           [&](RunConfig& c) { c.ring = f.ring; });
    overrides.emplace_back(sub->add_option("--N", f.n, "free-su2 parameter: d_1"),
                           [&](RunConfig& c) { c.n = f.n; });
    overrides.emplace_back(sub->add_option("--level", f.level, "free-su2 closure level"),
                           [&](RunConfig& c) { c.level = f.level; });
    overrides.emplace_back(sub->add_option("--omega", f.labels, "labels of Omega")->delimiter(','),
                           [&](RunConfig& c) { c.omega_labels = f.labels; });
  };
  auto group_flags = [&](CLI::App* sub, const char* omega_flag) {
    overrides.emplace_back(sub->add_option("--group", f.group, "Z^d:<d> or F:<k>"),
                           [&](RunConfig& c) { c.group = f.group; });
    overrides.emplace_back(sub->add_option(omega_flag, f.letters, "generator letters +-i (0 = identity)")->delimiter(','),
                           [&](RunConfig& c) { c.omega_letters = f.letters; });
  };
  auto size_flag = [&](CLI::App* sub, const char* name, const char* help) {
    overrides.emplace_back(sub->add_option(name, f.sizes, help)->delimiter(','),
                           [&](RunConfig& c) { c.truncations = f.sizes; });
  };

  auto* fusion = app.add_subcommand("fusion", "fusion-ring coamenability test");
  common(fusion);
  ring_flags(fusion);
  size_flag(fusion, "--trunc", "number of labels kept");

  auto* walk = app.add_subcommand("walk", "Kesten test on a ball-truncated Cayley graph");
  common(walk);
  group_flags(walk, "--omega");
  size_flag(walk, "--radius", "ball radii (comma list)");

  auto* semi = app.add_subcommand("semidirect", "R x| Z_2 interval test with the f_m witnesses");
  common(semi);
  overrides.emplace_back(semi->add_option("--interval", f.interval, "Omega = (a,b] as a:b"), [&](RunConfig& c) {
    std::tie(c.interval_a, c.interval_b) = split_pair(f.interval, ':', "interval");
  });
  overrides.emplace_back(semi->add_option("--grid", f.grid, "grid as h:max_r"), [&](RunConfig& c) {
    std::tie(c.grid_h, c.grid_max_r) = split_pair(f.grid, ':', "grid");
  });
  overrides.emplace_back(semi->add_option("--witness-m", f.ms, "window parameters m")->delimiter(','),
                         [&](RunConfig& c) { c.witness_m = f.ms; });

  auto* bic = app.add_subcommand("bicrossed", "bicrossed Z^2 x| Z_2 test on the symmetrized lattice");
  common(bic);
  size_flag(bic, "--bound", "lattice bounds B (comma list)");
  overrides.emplace_back(bic->add_option("--omega", f.pairs, "class r,r' (repeat the flag)"), [&](RunConfig& c) {
    c.omega_pairs.clear();
    for (const auto& s : f.pairs) c.omega_pairs.push_back(int_pair(s));
  });
  overrides.emplace_back(bic->add_option("--p", f.p, "modular exponent p"), [&](RunConfig& c) { c.p = f.p; });

  auto* sweep = app.add_subcommand("sweep", "spectral radius over increasing truncations");
  common(sweep);
  overrides.emplace_back(sweep->add_option("--target", f.target, "fusion or walk"),
                         [&](RunConfig& c) { c.sweep_target = f.target; });
  overrides.emplace_back(sweep->add_flag("--parallel", f.parallel, "run sizes concurrently"),
                         [&](RunConfig& c) { c.parallel = f.parallel; });
  ring_flags(sweep);
  group_flags(sweep, "--letters");
  size_flag(sweep, "--sizes", "truncation sizes (labels or radii)");

  auto* validate = app.add_subcommand("validate", "check ring axioms or group invariants");
  std::string descriptor, vgroup, voutput;
  validate->add_option("descriptor", descriptor, "ring descriptor file");
  validate->add_option("--group", vgroup, "group spec instead of a descriptor");
  validate->add_option("-o,--output", voutput, "report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    std::cout << error_json("input", e.what()).dump(2) << "\n";
    return 1;
  }

  std::optional<std::string> out_path;
  try {
    if (validate->parsed()) {
      if (!voutput.empty()) out_path = voutput;
      if (descriptor.empty() == vgroup.empty()) throw input_error("validate needs a descriptor or --group");
      const auto rep = descriptor.empty() ? validate_group(vgroup) : validate_descriptor(descriptor);
      emit(to_json(rep), out_path);
      return rep.valid() ? 0 : 2;
    }

    RunConfig config;
    if (config_path.empty())
      if (const char* env = std::getenv("QGSPEC_CONFIG"); env && *env) config_path = env;
    if (!config_path.empty()) config = load_config_file(config_path);
    for (auto* sub : {fusion, walk, semi, bic, sweep})
      if (sub->parsed()) config.command = command_from_string(sub->get_name());
    for (auto& [opt, apply] : overrides)
      if (opt->count() > 0) apply(config);
    if (config.truncations.empty()) config.truncations = default_truncations(config);
    out_path = config.output_path;

    const RunReport report = run(config);
    emit(to_json(report), out_path);
    if (config.csv_prefix) write_csv(report, *config.csv_prefix);
    return 0;
  } catch (const validation_error& e) {
    emit(error_json("validation", e.what(), {{"axiom", e.axiom()}}), out_path);
    return 2;
  } catch (const solver_error& e) {
    emit(error_json("solver", e.what()), out_path);
    return 3;
  } catch (const sweep_error& e) {
    emit(error_json("input", e.what(), {{"failing_size", e.failing_size()}}), out_path);
    return 1;
  } catch (const parse_error& e) {
    emit(error_json("parse", e.what()), out_path);
    return 1;
  } catch (const input_error& e) {
    emit(error_json("input", e.what()), out_path);
    return 1;
  } catch (const std::exception& e) {
    emit(error_json("internal", e.what()), out_path);
    return 4;
  }
}
