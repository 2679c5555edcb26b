#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "qgspec/core/lin_op.hpp"
#include "qgspec/core/spectral.hpp"
#include "qgspec/fusion/fusion_ring.hpp"

namespace qgspec::fusion {

/// The first `trunc` labels, with dim as the dimension weight and unit atoms.
std::shared_ptr<const SpectrumDomain> label_domain(const FusionRing& ring, std::size_t trunc);

/// Multiplicity matrix (L_kappa)_{beta,alpha} = mult(beta in kappa (x) alpha)
/// compressed to the first trunc labels. Channels falling outside are counted
/// in the "clipped_channels" metadata entry.
LinOp build_L_kappa(const FusionRing& ring, Label kappa, std::size_t trunc);

/// L_nu for nu = dim * chi_Omega with unit atoms: the sum of L_kappa over Omega.
LinOp build_L_nu(const FusionRing& ring, const std::vector<Label>& omega, std::size_t trunc);

/// dim(kappa) * sum_{alpha in Omega} dim(alpha)
///   == sum_alpha sum_beta mult(beta in kappa (x) alpha) dim(beta).
bool dim_bookkeeping_check(const FusionRing& ring, Label kappa, const std::vector<Label>& omega);

/// Normalized indicators of {labels < m} for m in {trunc/8, trunc/4, trunc/2}.
std::vector<Witness> level_window_witnesses(std::size_t trunc);

/// Tests sum_{Omega} dim in sigma(L_nu) on the truncation. Omega must be
/// closed under conjugation and trunc >= 10.
AmenabilityVerdict coamenability_test(const FusionRing& ring, const std::vector<Label>& omega,
                                      std::size_t trunc, double tol = kDefaultCertifyTol,
                                      const SolverSettings& solver = {});

}  // namespace qgspec::fusion
