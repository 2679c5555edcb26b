#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "qgspec/core/lin_op.hpp"
#include "qgspec/core/spectral.hpp"

namespace qgspec::semidirect {

using Pair = std::pair<int, int>;

/// Irr of the bicrossed product for G = Z: classes [(a, b)] of pairs with
/// a != b in [-B, B]^2 under (a, b) ~ (b, a), represented by a < b.
/// Each class has mass 1 and dim 2.
class SymLatticePair {
 public:
  explicit SymLatticePair(int bound);

  int bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return classes_.size(); }
  const std::vector<Pair>& classes() const noexcept { return classes_; }
  std::shared_ptr<const SpectrumDomain> domain() const { return domain_; }

  /// Input error on the diagonal.
  static Pair canonical(Pair p);
  static Pair conjugate(Pair p) { return canonical({-p.first, -p.second}); }
  bool in_bounds(Pair p) const noexcept;
  /// nullopt for diagonal or out-of-bound pairs.
  std::optional<std::size_t> index_of(Pair p) const;

 private:
  int bound_;
  std::vector<Pair> classes_;
  std::shared_ptr<const SpectrumDomain> domain_;
};

/// L_[(r,r')] f([(g,g')]) = delta(r,r')^{(1-p)/2} (f([(g-r, g'-r')]) + f([(g-r', g'-r)])).
/// delta = 1 for G = Z. Diagonal targets are dropped ("diagonal_drops"),
/// targets outside the bound are zero-padded ("out_of_bounds").
LinOp build_bicrossed_L(const SymLatticePair& pairs, Pair shift, double p = 1.0);

/// Sum of L_kappa over Omega, which must be closed under conjugation.
LinOp build_bicrossed_L_nu(const SymLatticePair& pairs, const std::vector<Pair>& omega, double p = 1.0);

struct BicrossedVerdict {
  AmenabilityVerdict primary;    // target 2 mu(Omega), i.e. nu = dim chi_Omega
  AmenabilityVerdict secondary;  // target mu(Omega), L integrated without dim/dim
};

/// Runs the certification over each bound; the best certificate across the
/// sweep is kept. Primary witnesses are flat and tapered boxes, secondary
/// witnesses are tapered boxes modulated to the frequency where the plane
/// wave symbol equals mu(Omega).
BicrossedVerdict bicrossed_amenability_test(const std::vector<int>& bounds,
                                            const std::vector<Pair>& omega, double p, double tol,
                                            const SolverSettings& solver = {});

}  // namespace qgspec::semidirect
