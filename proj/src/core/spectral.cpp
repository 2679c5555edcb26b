#include "qgspec/core/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "qgspec/core/errors.hpp"

namespace qgspec {
namespace {

std::vector<double> by_magnitude(std::vector<double> values, std::size_t keep) {
  std::stable_sort(values.begin(), values.end(),
                   [](double a, double b) { return std::abs(a) > std::abs(b); });
  if (values.size() > keep) values.resize(keep);
  return values;
}

// Power iteration on A^2 from v; returns the best ||Av|| seen and whether the
// estimate settled to within tol.
std::pair<double, bool> power_on_square(const SparseMatrix& a, Vector v, double tol,
                                        int budget, int& iterations) {
  double best = 0.0;
  double prev = -1.0;
  if (v.norm() == 0.0) return {0.0, true};
  v.normalize();
  for (int it = 0; it + 1 < budget; it += 2) {
    const Vector av = a * v;
    const double est = av.norm();
    best = std::max(best, est);
    Vector aav = a * av;
    iterations += 2;
    if (std::abs(est - prev) < tol) return {best, true};
    prev = est;
    const double nrm = aav.norm();
    if (nrm == 0.0) return {best, true};
    v = aav / nrm;
  }
  return {best, false};
}

}  // namespace

double residual(const LinOp& op, const Vector& v, double target) {
  const double nrm = v.norm();
  if (!(nrm > 0.0)) throw input_error("residual: zero vector");
  return (op.apply(v) - target * v).norm() / nrm;
}

SpectralReport spectral_radius(const LinOp& op, double tol, int max_iter,
                               const LanczosOptions& base) {
  if (!(tol > 0.0)) throw input_error("spectral_radius: tol must be positive");
  if (max_iter < 1) throw input_error("spectral_radius: max_iter must be positive");
  if (!op.symmetric())
    throw input_error("spectral_radius: operator is not symmetric (use operator_norm)");

  LanczosOptions opts = base;
  opts.tol = tol;
  opts.max_iter = max_iter;
  const LanczosResult run = lanczos(op, opts, LanczosTarget::extremal_magnitude);

  SpectralReport report;
  report.iterations = run.iterations;
  report.converged = run.converged;
  report.top_eigenvalues = by_magnitude(run.ritz_values, 10);

  const RitzPair* dominant = nullptr;
  for (const auto& pair : run.wanted) {
    report.radius_estimate = std::max(report.radius_estimate, std::abs(pair.value));
    const double rq = pair.vector.dot(op.apply(pair.vector));
    report.radius_lower_bound = std::max(report.radius_lower_bound, std::abs(rq));
    if (!dominant || std::abs(pair.value) > std::abs(dominant->value)) dominant = &pair;
  }

  if (!run.converged && dominant) {
    int extra = 0;
    const auto [power_est, settled] =
        power_on_square(op.matrix(), dominant->vector, tol, max_iter, extra);
    report.iterations += extra;
    report.method = "lanczos+power";
    report.radius_lower_bound = std::max(report.radius_lower_bound, power_est);
    report.converged = settled;
  }
  report.radius_estimate = std::max(report.radius_estimate, report.radius_lower_bound);
  return report;
}

SpectralReport operator_norm(const LinOp& op, double tol, int max_iter,
                             const LanczosOptions& base) {
  if (op.symmetric()) return spectral_radius(op, tol, max_iter, base);
  const SparseMatrix& a = op.matrix();
  SparseMatrix gram = SparseMatrix(a.transpose()) * a;
  SparseMatrix sym = 0.5 * (gram + SparseMatrix(gram.transpose()));
  const LinOp gram_op(op.domain_ptr(), std::move(sym), op.boundary_policy(),
                      SymmetryCheck::exact, true);
  SpectralReport r = spectral_radius(gram_op, tol, max_iter, base);
  r.radius_estimate = std::sqrt(r.radius_estimate);
  r.radius_lower_bound = std::sqrt(r.radius_lower_bound);
  for (double& v : r.top_eigenvalues) v = std::sqrt(std::abs(v));
  r.method += ":gram";
  return r;
}

MembershipCertificate in_spectrum(const LinOp& op, double target, double tol,
                                  const std::vector<Witness>& witnesses,
                                  const LanczosOptions& lanczos_opts) {
  if (!op.symmetric())
    throw input_error("in_spectrum: operator is not symmetric, residual certificates do not apply");
  if (!(tol > 0.0)) throw input_error("in_spectrum: tol must be positive");

  MembershipCertificate cert;
  cert.target = target;
  cert.tolerance = tol;
  cert.best_residual = std::numeric_limits<double>::infinity();
  cert.witness_id = "none";

  auto consider = [&](const std::string& id, const Vector& v) {
    const double nrm = v.norm();
    if (!(nrm > 0.0)) return;
    const double r = residual(op, v, target);
    cert.residuals.emplace_back(id, r);
    if (r < cert.best_residual) {
      cert.best_residual = r;
      cert.witness_id = id;
      cert.witness = v / nrm;
    }
  };

  for (const auto& w : witnesses) {
    if (static_cast<std::size_t>(w.vector.size()) != op.size())
      throw input_error("in_spectrum: witness '" + w.id + "' has the wrong length");
    consider(w.id, w.vector);
  }

  try {
    const LanczosResult run = lanczos(op, lanczos_opts, LanczosTarget::nearest_value, target);
    if (!run.wanted.empty()) consider("lanczos:nearest", run.wanted.front().vector);
    double gap = std::numeric_limits<double>::infinity();
    for (double v : run.ritz_values) gap = std::min(gap, std::abs(v - target));
    if (std::isfinite(gap)) cert.gap_hint = gap;
  } catch (const std::exception&) {
    // Lanczos failure leaves the certificate to the supplied witnesses.
  }

  cert.certified = cert.best_residual <= tol;
  return cert;
}

SpectralReport truncation_sweep(const OperatorFactory& builder,
                                const std::vector<std::size_t>& sizes, double tol, int max_iter,
                                bool parallel, const LanczosOptions& base) {
  if (sizes.empty()) throw input_error("truncation_sweep: no sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw input_error("truncation_sweep: sizes must be strictly increasing");

  auto one = [&](std::size_t size) {
    std::optional<LinOp> op;
    try {
      op.emplace(builder(size));
    } catch (const std::exception& e) {
      throw sweep_error(size, e.what());
    }
    return spectral_radius(*op, base.tol, max_iter, base);
  };

  std::vector<SpectralReport> reports;
  reports.reserve(sizes.size());
  if (parallel) {
    std::vector<std::future<SpectralReport>> jobs;
    for (std::size_t s : sizes) jobs.push_back(std::async(std::launch::async, one, s));
    for (auto& j : jobs) reports.push_back(j.get());
  } else {
    for (std::size_t s : sizes) reports.push_back(one(s));
  }

  SpectralReport out = reports.back();
  for (std::size_t i = 0; i < sizes.size(); ++i)
    out.truncation_trace.emplace_back(sizes[i], reports[i].radius_estimate);
  if (reports.size() >= 2) {
    const double last = reports.back().radius_estimate;
    const double prev = reports[reports.size() - 2].radius_estimate;
    out.trace_converged = std::abs(last - prev) < tol;
  }
  return out;
}

std::optional<double> AmenabilityVerdict::detail(const std::string& key) const {
  for (const auto& [k, v] : details)
    if (k == key) return v;
  return std::nullopt;
}

}  // namespace qgspec
