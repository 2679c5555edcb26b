#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qgspec/core/lin_op.hpp"
#include "qgspec/core/spectral.hpp"
#include "qgspec/walk/ball.hpp"
#include "qgspec/walk/group_model.hpp"

namespace qgspec::walk {

enum class ShiftSide {
  left,   // (A f)(x) = sum_s w(s) f(s^-1 x)
  right,  // (A f)(x) = sum_s w(s) f(x s^-1)
};

using WeightMap = std::map<Letter, double>;

/// Weighted convolution sum_s w(s) lambda_s compressed to the ball.
LinOp cayley_operator(const GroupModel& group, const WeightMap& weights,
                      const BallTruncation& ball, ShiftSide side = ShiftSide::left);

using Density = std::vector<std::pair<Element, double>>;
using ModularFunction = std::function<double(const Element&)>;

/// sum_zeta density(zeta) delta(zeta)^{-(p-1)/2} R_{zeta^-1}, compressed to the
/// ball. delta defaults to the group's modular function.
LinOp modular_weight_operator(const GroupModel& group, double p, const Density& density,
                              const BallTruncation& ball, const ModularFunction& delta = {});

/// Kesten test for sum_{s in Omega} lambda_s over a sweep of ball radii.
/// Certified iff the best radius lower bound reaches |Omega| - tol.
AmenabilityVerdict kesten_test(const GroupModel& group, const std::vector<Letter>& omega,
                               const std::vector<int>& radii, double tol,
                               const SolverSettings& solver = {});

}  // namespace qgspec::walk
