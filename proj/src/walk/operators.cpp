#include "qgspec/walk/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qgspec/core/errors.hpp"

namespace qgspec::walk {
namespace {

// Row x gets weight w at the column of x's source element.
LinOp assemble(const BallTruncation& ball,
               const std::vector<std::pair<Element, double>>& shifts,  // (zeta, weight)
               const GroupModel& group, ShiftSide side) {
  std::vector<Triplet> triplets;
  triplets.reserve(ball.size() * shifts.size());
  std::vector<std::pair<Element, double>> inv;
  for (const auto& [z, w] : shifts) inv.emplace_back(group.inverse(z), w);
  for (std::size_t row = 0; row < ball.size(); ++row) {
    const Element& x = ball.elements()[row];
    for (const auto& [zi, w] : inv) {
      if (w == 0.0) continue;
      const Element src = side == ShiftSide::left ? group.multiply(zi, x) : group.multiply(x, zi);
      if (auto col = ball.index_of(src))
        triplets.emplace_back(static_cast<int>(row), static_cast<int>(*col), w);
    }
  }
  return LinOp::from_triplets(ball.domain(), triplets, BoundaryPolicy::zero_pad);
}

void check_weight(double w) {
  if (!std::isfinite(w) || w < 0) throw input_error("weights must be finite and nonnegative");
}

}  // namespace

LinOp cayley_operator(const GroupModel& group, const WeightMap& weights,
                      const BallTruncation& ball, ShiftSide side) {
  std::vector<std::pair<Element, double>> shifts;
  for (const auto& [s, w] : weights) {
    if (!group.is_letter(s))
      throw input_error("weight on " + std::to_string(s) + ", which is not a generator of " + group.name());
    check_weight(w);
    shifts.emplace_back(group.element(s), w);
  }
  return assemble(ball, shifts, group, side);
}

LinOp modular_weight_operator(const GroupModel& group, double p, const Density& density,
                              const BallTruncation& ball, const ModularFunction& delta) {
  if (!std::isfinite(p)) throw input_error("p must be finite");
  std::vector<std::pair<Element, double>> shifts;
  for (const auto& [z, w] : density) {
    check_weight(w);
    if (!ball.index_of(z)) throw input_error("density support " + group.format(z) + " lies outside the ball");
    const double d = delta ? delta(z) : group.modular(z);
    if (!(d > 0) || !std::isfinite(d)) throw input_error("modular function must be positive");
    shifts.emplace_back(z, w * std::pow(d, -(p - 1) / 2));
  }
  return assemble(ball, shifts, group, ShiftSide::right);
}

AmenabilityVerdict kesten_test(const GroupModel& group, const std::vector<Letter>& omega,
                               const std::vector<int>& radii, double tol,
                               const SolverSettings& solver) {
  if (omega.empty()) throw input_error("Omega is empty");
  const std::set<Letter> om(omega.begin(), omega.end());
  for (Letter s : om) {
    if (!group.is_letter(s)) throw input_error("letter " + std::to_string(s) + " is not a generator of " + group.name());
    if (!om.count(-s)) throw input_error("Omega is not symmetric");
  }
  if (radii.empty()) throw input_error("no radii given");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (radii[i] < 0 || (i > 0 && radii[i] <= radii[i - 1]))
      throw input_error("radii must be nonnegative and strictly increasing");
  if (!(tol > 0)) throw input_error("tolerance must be positive");

  WeightMap weights;
  for (Letter s : om) weights[s] = 1.0;
  const double target = static_cast<double>(om.size());

  AmenabilityVerdict v;
  v.target = target;
  v.rule = "radius_lower_bound";
  double best_lower = 0.0;
  for (int radius : radii) {
    const BallTruncation ball(group, radius);
    const LinOp op = cayley_operator(group, weights, ball);
    SpectralReport rep = spectral_radius(op, solver.eig_tol, solver.max_iter, solver.radius_options());
    best_lower = std::max(best_lower, rep.radius_lower_bound);
    auto trace = std::move(v.spectral.truncation_trace);
    trace.emplace_back(static_cast<std::size_t>(radius), rep.radius_estimate);
    v.spectral = std::move(rep);
    v.spectral.truncation_trace = std::move(trace);
    v.details.emplace_back("normalized_lower_bound:R=" + std::to_string(radius),
                           v.spectral.radius_lower_bound / target);

    if (radius == radii.back()) {
      std::vector<Witness> witnesses;
      for (int m : {radius / 2, radius}) {
        Vector w = Vector::Zero(static_cast<Eigen::Index>(ball.size()));
        for (std::size_t i = 0; i < ball.size(); ++i)
          if (group.word_length(ball.elements()[i]) <= m) w[static_cast<Eigen::Index>(i)] = 1.0;
        witnesses.push_back({"ball:" + std::to_string(m), w / w.norm()});
      }
      Vector c(static_cast<Eigen::Index>(ball.size()));
      for (std::size_t i = 0; i < ball.size(); ++i)
        c[static_cast<Eigen::Index>(i)] =
            std::cos(std::numbers::pi * group.word_length(ball.elements()[i]) / (2.0 * radius + 2.0));
      witnesses.push_back({"radial-cosine:" + std::to_string(radius), c / c.norm()});
      v.certificate = in_spectrum(op, target, tol, witnesses, solver.certify_options());
      v.details.emplace_back("ball_size", static_cast<double>(ball.size()));
    }
  }
  const auto& tr = v.spectral.truncation_trace;
  if (tr.size() >= 2) v.spectral.trace_converged = std::abs(tr.back().second - tr[tr.size() - 2].second) < tol;
  v.certified = best_lower >= target - tol;
  v.details.emplace_back("best_lower_bound", best_lower);
  v.details.emplace_back("normalized_radius", best_lower / target);
  return v;
}

}  // namespace qgspec::walk
