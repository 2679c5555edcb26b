#include "qgspec/fusion/operators.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <set>

#include "qgspec/core/errors.hpp"

namespace qgspec::fusion {
namespace {

void check_trunc(const FusionRing& ring, std::size_t trunc) {
  if (trunc == 0 || trunc > ring.size())
    throw input_error("truncation " + std::to_string(trunc) + " outside 1.." +
                      std::to_string(ring.size()));
}

std::vector<Label> normalize_omega(const FusionRing& ring, const std::vector<Label>& omega) {
  if (omega.empty()) throw input_error("Omega is empty");
  std::set<Label> uniq(omega.begin(), omega.end());
  for (Label k : uniq)
    if (k >= ring.size()) throw input_error("Omega label index " + std::to_string(k) + " out of range");
  return {uniq.begin(), uniq.end()};
}

bool conj_closed(const FusionRing& ring, const std::vector<Label>& omega) {
  return std::all_of(omega.begin(), omega.end(), [&](Label k) {
    return std::binary_search(omega.begin(), omega.end(), ring.conj(k));
  });
}

void add_kappa(const FusionRing& ring, Label kappa, std::size_t trunc,
               std::vector<Triplet>& triplets, double& clipped) {
  for (Label a = 0; a < trunc; ++a) {
    const auto d = ring.decompose(kappa, a);
    clipped += static_cast<double>(d.clipped);
    for (const auto& c : d.channels) {
      if (c.label < trunc)
        triplets.emplace_back(static_cast<int>(c.label), static_cast<int>(a), c.multiplicity);
      else
        clipped += c.multiplicity;
    }
  }
}

}  // namespace

std::shared_ptr<const SpectrumDomain> label_domain(const FusionRing& ring, std::size_t trunc) {
  check_trunc(ring, trunc);
  std::vector<std::string> names;
  std::vector<double> dims;
  for (Label a = 0; a < trunc; ++a) {
    names.push_back(ring.name(a));
    const Dimension d = ring.dim(a);
    dims.push_back(d > static_cast<Dimension>(DBL_MAX) ? DBL_MAX : static_cast<double>(d));
  }
  return std::make_shared<const SpectrumDomain>(DomainKind::discrete_labels, std::move(names),
                                                std::move(dims), std::vector<double>(trunc, 1.0));
}

LinOp build_L_kappa(const FusionRing& ring, Label kappa, std::size_t trunc) {
  if (kappa >= ring.size()) throw input_error("unknown label index " + std::to_string(kappa));
  auto domain = label_domain(ring, trunc);
  std::vector<Triplet> triplets;
  double clipped = 0;
  add_kappa(ring, kappa, trunc, triplets, clipped);
  LinOp op = LinOp::from_triplets(domain, triplets, BoundaryPolicy::zero_pad,
                                  SymmetryCheck::exact, ring.conj(kappa) == kappa);
  op.set_metadata("clipped_channels", clipped);
  return op;
}

LinOp build_L_nu(const FusionRing& ring, const std::vector<Label>& omega, std::size_t trunc) {
  const auto om = normalize_omega(ring, omega);
  auto domain = label_domain(ring, trunc);
  std::vector<Triplet> triplets;
  double clipped = 0;
  for (Label k : om) add_kappa(ring, k, trunc, triplets, clipped);
  LinOp op = LinOp::from_triplets(domain, triplets, BoundaryPolicy::zero_pad,
                                  SymmetryCheck::exact, conj_closed(ring, om));
  op.set_metadata("clipped_channels", clipped);
  return op;
}

bool dim_bookkeeping_check(const FusionRing& ring, Label kappa, const std::vector<Label>& omega) {
  Dimension omega_dim = 0, rhs = 0;
  for (Label a : omega) {
    omega_dim += ring.dim(a);
    for (const auto& c : ring.decompose_unclipped(kappa, a)) rhs += c.multiplicity * ring.dim(c.label);
  }
  return dims_agree(ring.dim(kappa) * omega_dim, rhs, ring.integral_dims());
}

std::vector<Witness> level_window_witnesses(std::size_t trunc) {
  std::vector<Witness> out;
  std::set<std::size_t> seen;
  for (std::size_t m : {trunc / 8, trunc / 4, trunc / 2}) {
    if (m == 0 || !seen.insert(m).second) continue;
    Vector v = Vector::Zero(static_cast<Eigen::Index>(trunc));
    v.head(static_cast<Eigen::Index>(m)).setConstant(1.0 / std::sqrt(static_cast<double>(m)));
    out.push_back({"window:" + std::to_string(m), std::move(v)});
  }
  return out;
}

AmenabilityVerdict coamenability_test(const FusionRing& ring, const std::vector<Label>& omega,
                                      std::size_t trunc, double tol, const SolverSettings& solver) {
  const auto om = normalize_omega(ring, omega);
  if (!conj_closed(ring, om)) throw input_error("Omega is not closed under conjugation");
  if (trunc < 10) throw input_error("coamenability_test needs trunc >= 10");
  if (!(tol > 0)) throw input_error("tolerance must be positive");

  const LinOp op = build_L_nu(ring, om, trunc);
  Dimension target = 0;
  for (Label k : om) target += ring.dim(k);

  AmenabilityVerdict v;
  v.target = static_cast<double>(target);
  v.rule = "residual";
  v.certificate = in_spectrum(op, v.target, tol, level_window_witnesses(trunc), solver.certify_options());
  v.spectral = spectral_radius(op, solver.eig_tol, solver.max_iter, solver.radius_options());
  v.certified = v.certificate.certified;
  v.details = {{"trunc", static_cast<double>(trunc)},
               {"omega_size", static_cast<double>(om.size())},
               {"clipped_channels", op.metadata().at("clipped_channels")}};
  return v;
}

}  // namespace qgspec::fusion
