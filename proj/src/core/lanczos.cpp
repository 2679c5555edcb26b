#include "qgspec/core/lanczos.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qgspec/core/errors.hpp"

namespace qgspec {
namespace {

Vector random_unit(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);
  v.normalize();
  return v;
}

// Number of eigenvalues of the tridiagonal matrix strictly below x.
std::size_t sturm_count(const std::vector<double>& diag, const std::vector<double>& off,
                        double x) {
  constexpr double tiny = std::numeric_limits<double>::min() * 1e6;
  std::size_t count = 0;
  double q = diag[0] - x;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (std::abs(q) < tiny) q = q < 0 ? -tiny : tiny;
    q = diag[i] - x - off[i - 1] * off[i - 1] / q;
    if (q < 0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin(const std::vector<double>& diag,
                                     const std::vector<double>& off) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < diag.size()) r += std::abs(off[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  return {lo, hi};
}

// index-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double kth_eigenvalue(const std::vector<double>& diag, const std::vector<double>& off,
                      std::size_t index) {
  if (diag.size() == 1) return diag[0];
  auto [lo, hi] = gershgorin(diag, off);
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  lo -= 1e-12 * scale;
  hi += 1e-12 * scale;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diag, off, mid) > index)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * scale) break;
  }
  return 0.5 * (lo + hi);
}

// Solve (T - sigma) x = b in place; LAPACK gttrf/gttrs with partial pivoting.
void shifted_tridiagonal_solve(const std::vector<double>& diag, const std::vector<double>& off,
                               double sigma, Vector& b) {
  const std::size_t n = diag.size();
  const auto [g_lo, g_hi] = gershgorin(diag, off);
  const double scale = std::max({1e-300, std::abs(g_lo), std::abs(g_hi)});
  const double tiny = std::numeric_limits<double>::epsilon() * scale;

  std::vector<double> d(n), dl(n > 0 ? n - 1 : 0), du(n > 0 ? n - 1 : 0), du2(n, 0.0);
  std::vector<bool> swapped(n, false);
  for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - sigma;
  for (std::size_t i = 0; i + 1 < n; ++i) dl[i] = du[i] = off[i];

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (std::abs(d[i]) < tiny) d[i] = d[i] < 0 ? -tiny : tiny;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = true;
    }
  }
  if (std::abs(d[n - 1]) < tiny) d[n - 1] = d[n - 1] < 0 ? -tiny : tiny;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped[i]) {
      b[i + 1] -= dl[i] * b[i];
    } else {
      const double temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - dl[i] * b[i];
    }
  }
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (auto i = static_cast<std::ptrdiff_t>(n) - 3; i >= 0; --i) {
    const auto u = static_cast<std::size_t>(i);
    b[i] = (b[i] - du[u] * b[i + 1] - du2[u] * b[i + 2]) / d[u];
  }
}

struct WantedIndex {
  std::size_t index;
  double value;
};

std::vector<WantedIndex> wanted_indices(const std::vector<double>& diag,
                                        const std::vector<double>& off, LanczosTarget target,
                                        double shift) {
  const std::size_t k = diag.size();
  std::vector<WantedIndex> out;
  if (target == LanczosTarget::extremal_magnitude) {
    out.push_back({0, kth_eigenvalue(diag, off, 0)});
    if (k > 1) out.push_back({k - 1, kth_eigenvalue(diag, off, k - 1)});
    return out;
  }
  const std::size_t below = sturm_count(diag, off, shift);
  std::optional<WantedIndex> best;
  for (std::size_t idx : {below == 0 ? std::size_t{0} : below - 1, below}) {
    if (idx >= k) continue;
    const double v = kth_eigenvalue(diag, off, idx);
    if (!best || std::abs(v - shift) < std::abs(best->value - shift)) best = WantedIndex{idx, v};
  }
  out.push_back(*best);
  return out;
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& offdiag) {
  const auto k = static_cast<Eigen::Index>(diag.size());
  if (k == 0) return {};
  if (k == 1) return {diag[0]};
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), k);
  Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(offdiag.data(), k - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

Vector tridiagonal_eigenvector(const std::vector<double>& diag,
                               const std::vector<double>& offdiag, double eigenvalue) {
  const auto k = static_cast<Eigen::Index>(diag.size());
  Vector x(k);
  if (k == 1) {
    x[0] = 1.0;
    return x;
  }
  // Start vector with no special structure, then two inverse iteration sweeps.
  for (Eigen::Index i = 0; i < k; ++i) x[i] = 1.0 + 0.1 * std::sin(1.0 + 0.7 * static_cast<double>(i));
  x.normalize();
  for (int sweep = 0; sweep < 3; ++sweep) {
    shifted_tridiagonal_solve(diag, offdiag, eigenvalue, x);
    const double nrm = x.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
    x /= nrm;
  }
  return x;
}

LanczosResult lanczos(const LinOp& op, const LanczosOptions& opts, LanczosTarget target,
                      double shift) {
  if (!op.symmetric()) throw input_error("lanczos: operator is not symmetric");
  if (!(opts.tol > 0.0)) throw input_error("lanczos: tolerance must be positive");
  if (opts.max_iter < 1) throw input_error("lanczos: max_iter must be positive");

  const auto n = static_cast<Eigen::Index>(op.size());
  const SparseMatrix& a = op.matrix();
  const bool capped = op.size() > static_cast<std::size_t>(opts.full_reorth_limit);
  const Eigen::Index cycle_cap =
      capped ? std::min<Eigen::Index>(n, std::max(opts.krylov_cap, 4)) : n;

  LanczosResult result;
  Vector start = random_unit(n, opts.seed);
  Eigen::MatrixXd basis(n, std::min<Eigen::Index>(cycle_cap, 64));
  double scale = 0.0;

  while (true) {
    std::vector<double> alpha;
    std::vector<double> beta;
    Vector q = start;
    Eigen::Index k = 0;
    bool breakdown = false;
    bool converged = false;
    Eigen::Index next_check = std::min<Eigen::Index>(8, cycle_cap);
    std::vector<WantedIndex> wanted;
    std::vector<Vector> wanted_s;

    auto evaluate = [&]() {
      std::vector<double> off(beta.begin(), beta.begin() + (k - 1));
      wanted = wanted_indices(alpha, off, target, shift);
      wanted_s.clear();
      bool ok = true;
      const double last_beta = breakdown ? 0.0 : beta.back();
      for (const auto& w : wanted) {
        Vector s = tridiagonal_eigenvector(alpha, off, w.value);
        ok = ok && std::abs(last_beta * s[k - 1]) <= opts.tol;
        wanted_s.push_back(std::move(s));
      }
      return ok;
    };

    while (k < cycle_cap && result.iterations < opts.max_iter) {
      if (basis.cols() <= k)
        basis.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(cycle_cap, 2 * basis.cols()));
      basis.col(k) = q;
      Vector w = a * q;
      ++result.iterations;
      double alpha_k = q.dot(w);
      w -= alpha_k * q;
      if (k > 0) w -= beta[k - 1] * basis.col(k - 1);
      // Classical Gram-Schmidt, repeated when the pass cancelled more than
      // 1 - 1/sqrt(2) of the norm (DGKS criterion).
      for (int pass = 0; pass < 2; ++pass) {
        const double before = w.norm();
        const Vector h = basis.leftCols(k + 1).transpose() * w;
        w -= basis.leftCols(k + 1) * h;
        alpha_k += h[k];
        if (w.norm() > std::numbers::sqrt2 / 2 * before) break;
      }
      alpha.push_back(alpha_k);
      const double b = w.norm();
      ++k;
      scale = std::max(scale, std::abs(alpha_k) + b);
      if (b <= 1e-12 * scale || scale == 0.0) {
        breakdown = true;
        break;
      }
      beta.push_back(b);
      q = w / b;
      if (k >= next_check && k < cycle_cap) {
        if (evaluate()) {
          converged = true;
          break;
        }
        next_check = k + std::max<Eigen::Index>(8, k / 8);
      }
    }

    if (!converged) converged = evaluate() || breakdown || (!capped && k == n);
    result.invariant_subspace = breakdown;

    std::vector<double> off(beta.begin(), beta.begin() + (k - 1));
    result.ritz_values = tridiagonal_eigenvalues(alpha, off);
    result.wanted.clear();
    const double last_beta = breakdown ? 0.0 : beta.back();
    for (std::size_t i = 0; i < wanted.size(); ++i) {
      RitzPair pair;
      pair.value = wanted[i].value;
      pair.residual_bound = std::abs(last_beta * wanted_s[i][k - 1]);
      pair.vector = basis.leftCols(k) * wanted_s[i];
      const double nrm = pair.vector.norm();
      if (nrm > 0.0) pair.vector /= nrm;
      result.wanted.push_back(std::move(pair));
    }

    result.converged = converged;
    if (converged || result.iterations >= opts.max_iter || !capped) break;

    start.setZero();
    for (const auto& p : result.wanted) start += p.vector;
    if (start.norm() == 0.0) start = result.wanted.front().vector;
    start.normalize();
    ++result.restarts;
  }
  return result;
}

}  // namespace qgspec
