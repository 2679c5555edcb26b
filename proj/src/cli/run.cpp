#include "qgspec/cli/run.hpp"

#include <algorithm>
#include <chrono>

#include "qgspec/core/errors.hpp"
#include "qgspec/fusion/descriptor.hpp"
#include "qgspec/fusion/operators.hpp"
#include "qgspec/semidirect/bicrossed.hpp"
#include "qgspec/semidirect/half_line.hpp"
#include "qgspec/walk/ball.hpp"
#include "qgspec/walk/operators.hpp"

namespace qgspec::cli {
namespace {

fusion::FusionRing make_ring(const RunConfig& c) {
  if (c.ring == "free-su2") {
    const long top = c.truncations.empty() ? 2 : c.truncations.back();
    const int level = c.level.value_or(static_cast<int>(std::max(1L, top - 1)));
    return fusion::load_ring(fusion::RuleDescriptor{"free-su2", c.n, level});
  }
  return fusion::load_ring(fusion::parse_descriptor_file(c.ring));
}

std::vector<fusion::Label> ring_omega(const fusion::FusionRing& ring, const RunConfig& c) {
  std::vector<fusion::Label> out;
  for (const auto& name : c.omega_labels) out.push_back(ring.require(name));
  return out;
}

std::vector<walk::Letter> walk_omega(const walk::GroupModel& g, const RunConfig& c) {
  if (!c.omega_letters.empty()) return c.omega_letters;
  if (g.generators().empty()) return {0};
  return g.generators();
}

std::vector<int> as_ints(const std::vector<long>& v) { return {v.begin(), v.end()}; }

SolverSettings solver(const RunConfig& c) {
  return {.eig_tol = c.eig_tol, .max_iter = c.max_iter, .certify_iter = kDefaultCertifyIter, .seed = c.seed};
}

void fill(RunReport& r, const AmenabilityVerdict& v) {
  r.spectral = v.spectral;
  r.certificate = v.certificate;
  r.verdict = summarize(v);
}

}  // namespace

RunReport run(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const SolverSettings s = solver(config);
  RunReport r;
  r.config = config;

  switch (config.command) {
    case Command::fusion: {
      const auto ring = make_ring(config);
      const auto omega = ring_omega(ring, config);
      const auto trunc = static_cast<std::size_t>(config.truncations.front());
      fill(r, fusion::coamenability_test(ring, omega, trunc, config.tolerance, s));
      r.op = fingerprint(fusion::build_L_nu(ring, omega, trunc));
      break;
    }
    case Command::walk: {
      const auto group = walk::GroupModel::parse(config.group);
      const auto omega = walk_omega(group, config);
      fill(r, walk::kesten_test(group, omega, as_ints(config.truncations), config.tolerance, s));
      walk::WeightMap w;
      for (auto l : omega) w[l] = 1.0;
      r.op = fingerprint(walk::cayley_operator(
          group, w, walk::BallTruncation(group, static_cast<int>(config.truncations.back()))));
      break;
    }
    case Command::semidirect: {
      const semidirect::HalfLineGrid grid(config.grid_h, config.grid_max_r);
      fill(r, semidirect::interval_test(grid, config.interval_a, config.interval_b, config.witness_m,
                                        config.tolerance, s));
      r.op = fingerprint(semidirect::build_L_nu_interval(grid, config.interval_a, config.interval_b).op);
      break;
    }
    case Command::bicrossed: {
      const auto bounds = as_ints(config.truncations);
      const auto v = semidirect::bicrossed_amenability_test(bounds, config.omega_pairs, config.p,
                                                            config.tolerance, s);
      fill(r, v.primary);
      r.secondary_certificate = v.secondary.certificate;
      r.secondary_verdict = summarize(v.secondary);
      r.op = fingerprint(semidirect::build_bicrossed_L_nu(semidirect::SymLatticePair(bounds.back()),
                                                          config.omega_pairs, config.p));
      break;
    }
    case Command::sweep: {
      std::vector<std::size_t> sizes(config.truncations.begin(), config.truncations.end());
      OperatorFactory builder;
      if (config.sweep_target == "fusion") {
        auto ring = std::make_shared<fusion::FusionRing>(make_ring(config));
        auto omega = ring_omega(*ring, config);
        builder = [ring, omega](std::size_t n) { return fusion::build_L_nu(*ring, omega, n); };
      } else {
        auto group = std::make_shared<walk::GroupModel>(walk::GroupModel::parse(config.group));
        walk::WeightMap w;
        for (auto l : walk_omega(*group, config)) w[l] = 1.0;
        builder = [group, w](std::size_t radius) {
          return walk::cayley_operator(*group, w, walk::BallTruncation(*group, static_cast<int>(radius)));
        };
      }
      r.spectral = truncation_sweep(builder, sizes, config.tolerance, s.max_iter, config.parallel,
                                    s.radius_options());
      r.op = fingerprint(builder(sizes.back()));
      break;
    }
  }

  if (!r.spectral.converged)
    throw solver_error("spectral radius did not converge within " + std::to_string(config.max_iter) +
                       " iterations (best estimate " + std::to_string(r.spectral.radius_estimate) + ")");
  if (config.timing)
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

bool ValidationReport::valid() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomLine& l) { return l.passed; });
}

ValidationReport validate_descriptor(const std::string& path) {
  const auto ring = fusion::FusionRing::unchecked(fusion::parse_descriptor_file(path));
  ValidationReport out{path + " (" + ring.describe() + ")", {}};
  for (const auto& a : fusion::check_axioms(ring)) out.checks.push_back({a.axiom, a.passed, a.detail});
  return out;
}

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t expected_ball_size(const walk::GroupModel& g, std::size_t radius) {
  const auto k = static_cast<std::size_t>(g.rank());
  if (!g.is_free()) {
    std::size_t total = 0;
    for (std::size_t j = 0; j <= k; ++j) total += (std::size_t{1} << j) * binom(k, j) * binom(radius, j);
    return total;
  }
  std::size_t total = 1, sphere = 2 * k;
  for (std::size_t r = 1; r <= radius; ++r, sphere *= 2 * k - 1) total += sphere;
  return total;
}

}  // namespace

ValidationReport validate_group(const std::string& spec) {
  const auto g = walk::GroupModel::parse(spec);
  ValidationReport out{g.name(), {}};
  bool symmetric = true;
  for (auto s : g.generators())
    symmetric = symmetric && std::find(g.generators().begin(), g.generators().end(), -s) != g.generators().end();
  out.checks.push_back({"generators closed under inverse", symmetric, ""});
  out.checks.push_back({"free right action", g.check_action(64), ""});
  std::string detail;
  for (int radius = 0; radius <= 4 && detail.empty(); ++radius) {
    const auto got = walk::BallTruncation(g, radius).size();
    const auto want = expected_ball_size(g, static_cast<std::size_t>(radius));
    if (got != want)
      detail = "radius " + std::to_string(radius) + ": " + std::to_string(got) + " != " + std::to_string(want);
  }
  out.checks.push_back({"ball growth", detail.empty(), detail});
  return out;
}

nlohmann::json to_json(const ValidationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"axiom", c.axiom}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"schema", kReportSchema}, {"subject", r.subject}, {"valid", r.valid()}, {"checks", checks}};
}

}  // namespace qgspec::cli
