#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgspec/core/lanczos.hpp"
#include "qgspec/core/lin_op.hpp"

namespace qgspec {

struct SpectralReport {
  double radius_estimate = 0.0;
  double radius_lower_bound = 0.0;
  std::vector<double> top_eigenvalues;  // by decreasing magnitude
  int iterations = 0;
  bool converged = false;
  std::string method = "lanczos";       // "lanczos" or "lanczos+power"
  std::vector<std::pair<std::size_t, double>> truncation_trace;
  std::optional<bool> trace_converged;  // Cauchy test on the trace, sweeps only
};

struct Witness {
  std::string id;
  Vector vector;
};

struct MembershipCertificate {
  double target = 0.0;
  double best_residual = 0.0;  // ||(A - target) v|| / ||v||, minimised over witnesses
  std::string witness_id;      // "none" when nothing could be evaluated
  bool certified = false;
  std::optional<double> gap_hint;  // distance from target to the nearest Ritz value
  double tolerance = 0.0;
  std::vector<std::pair<std::string, double>> residuals;  // every witness tried
  Vector witness;              // the best vector, unit norm
};

inline constexpr double kDefaultEigenTol = 1e-8;
inline constexpr double kDefaultCertifyTol = 1e-2;
inline constexpr int kDefaultMaxIter = 5000;
inline constexpr int kDefaultCertifyIter = 400;

/// Largest |eigenvalue| of a symmetric operator. radius_lower_bound is the
/// largest |Rayleigh quotient| (or ||Av|| from the power fallback) actually
/// evaluated, so it never exceeds the true radius up to roundoff.
SpectralReport spectral_radius(const LinOp& op, double tol = kDefaultEigenTol,
                               int max_iter = kDefaultMaxIter,
                               const LanczosOptions& base = {});

/// Operator norm, for operators that need not be symmetric: sqrt of the
/// spectral radius of A^T A (equal to spectral_radius for symmetric A).
SpectralReport operator_norm(const LinOp& op, double tol = kDefaultEigenTol,
                             int max_iter = kDefaultMaxIter,
                             const LanczosOptions& base = {});

double residual(const LinOp& op, const Vector& v, double target);

/// Certifies target in sigma(op) on the truncation via residuals. Refuses
/// non-symmetric operators. Non-membership is never certified; gap_hint is
/// only a heuristic.
MembershipCertificate in_spectrum(const LinOp& op, double target, double tol,
                                  const std::vector<Witness>& witnesses,
                                  const LanczosOptions& lanczos_opts = {.max_iter = kDefaultCertifyIter});

/// Solver knobs shared by the example tests: radius computations use eig_tol
/// and max_iter, membership certificates run certify_iter Lanczos steps.
struct SolverSettings {
  double eig_tol = kDefaultEigenTol;
  int max_iter = kDefaultMaxIter;
  int certify_iter = kDefaultCertifyIter;
  std::uint64_t seed = LanczosOptions{}.seed;

  LanczosOptions radius_options() const { return {.tol = eig_tol, .max_iter = max_iter, .seed = seed}; }
  LanczosOptions certify_options() const { return {.max_iter = certify_iter, .seed = seed}; }
};

using OperatorFactory = std::function<LinOp(std::size_t)>;

/// Rebuilds the operator at each size and records the radius estimates,
/// each computed to base.tol. trace_converged is set from the last two
/// estimates (|difference| < tol).
SpectralReport truncation_sweep(const OperatorFactory& builder,
                                const std::vector<std::size_t>& sizes, double tol,
                                int max_iter = kDefaultMaxIter, bool parallel = false,
                                const LanczosOptions& base = {});

/// Outcome of an amenability-type test: the target ||nu||_1, the certificate
/// and the spectral data the verdict was read from.
struct AmenabilityVerdict {
  double target = 0.0;
  bool certified = false;
  std::string rule;  // "residual" or "radius_lower_bound"
  MembershipCertificate certificate;
  SpectralReport spectral;
  std::vector<std::pair<std::string, double>> details;

  double best_residual() const { return certificate.best_residual; }
  std::optional<double> detail(const std::string& key) const;
};

}  // namespace qgspec
