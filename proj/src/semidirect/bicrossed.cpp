#include "qgspec/semidirect/bicrossed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qgspec/core/errors.hpp"

namespace qgspec::semidirect {
namespace {

std::string fmt(Pair p) { return "[(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")]"; }

// Modular function of G x G for G = Z.
double delta_gxg(Pair) { return 1.0; }

std::vector<Pair> normalize_omega(const std::vector<Pair>& omega) {
  if (omega.empty()) throw input_error("Omega is empty");
  std::set<Pair> classes;
  for (Pair p : omega) classes.insert(SymLatticePair::canonical(p));
  for (Pair p : classes)
    if (!classes.count(SymLatticePair::conjugate(p)))
      throw input_error("Omega is not closed under conjugation: missing " + fmt(SymLatticePair::conjugate(p)));
  return {classes.begin(), classes.end()};
}

// Off-diagonal sine box a in [-w, -1], b in [1, w]; vanishes on the box edges.
Vector tapered_box(const SymLatticePair& pairs, int w, double theta) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(pairs.size()));
  const double k = std::numbers::pi / (w + 1);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs.classes()[i];
    if (a < -w || a > -1 || b < 1 || b > w) continue;
    v[static_cast<Eigen::Index>(i)] = std::sin(k * (a + w + 1)) * std::sin(k * b) * std::cos(theta * (a + b));
  }
  return v;
}

Vector flat_box(const SymLatticePair& pairs, int m) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs.classes()[i];
    if (std::abs(a) <= m && std::abs(b) <= m) v[static_cast<Eigen::Index>(i)] = 1.0;
  }
  return v;
}

// Symbol of the plane wave exp(i theta (a + b)): sum over Omega of 2 cos(theta (r + r')).
double symbol(const std::vector<Pair>& omega, double theta) {
  double s = 0;
  for (auto [r, rp] : omega) s += 2 * std::cos(theta * (r + rp));
  return s;
}

std::optional<double> solve_symbol(const std::vector<Pair>& omega, double target) {
  constexpr int steps = 2048;
  double prev = symbol(omega, 0) - target;
  for (int i = 1; i <= steps; ++i) {
    double hi = std::numbers::pi * i / steps;
    double cur = symbol(omega, hi) - target;
    if (prev == 0) return std::numbers::pi * (i - 1) / steps;
    if ((prev < 0) != (cur < 0)) {
      double lo = std::numbers::pi * (i - 1) / steps;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (((symbol(omega, mid) - target) < 0) == (prev < 0))
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = cur;
  }
  return std::nullopt;
}

void keep_better(AmenabilityVerdict& best, MembershipCertificate cert) {
  if (cert.best_residual < best.certificate.best_residual || best.certificate.witness_id.empty())
    best.certificate = std::move(cert);
}

}  // namespace

SymLatticePair::SymLatticePair(int bound) : bound_(bound) {
  if (bound < 1) throw input_error("lattice bound must be >= 1");
  std::vector<std::string> names;
  for (int a = -bound; a <= bound; ++a)
    for (int b = a + 1; b <= bound; ++b) {
      classes_.emplace_back(a, b);
      names.push_back(fmt({a, b}));
    }
  const std::size_t n = classes_.size();
  domain_ = std::make_shared<const SpectrumDomain>(DomainKind::discrete_labels, std::move(names),
                                                   std::vector<double>(n, 2.0),
                                                   std::vector<double>(n, 1.0));
}

Pair SymLatticePair::canonical(Pair p) {
  if (p.first == p.second) throw input_error("diagonal pair " + fmt(p) + " is not a class");
  return p.first < p.second ? p : Pair{p.second, p.first};
}

bool SymLatticePair::in_bounds(Pair p) const noexcept {
  return std::abs(p.first) <= bound_ && std::abs(p.second) <= bound_;
}

std::optional<std::size_t> SymLatticePair::index_of(Pair p) const {
  if (p.first == p.second || !in_bounds(p)) return std::nullopt;
  const Pair c = canonical(p);
  const long m = 2L * bound_ + 1;
  const long i = c.first + bound_;
  const long j = c.second + bound_;
  return static_cast<std::size_t>(i * (m - 1) - i * (i - 1) / 2 + (j - i - 1));
}

LinOp build_bicrossed_L(const SymLatticePair& pairs, Pair shift, double p) {
  if (shift.first == shift.second) throw input_error("shift pair needs r != r'");
  if (!std::isfinite(p)) throw input_error("p must be finite");
  const auto [r, rp] = shift;
  const double prefactor = std::pow(delta_gxg(shift), (1.0 - p) / 2.0);
  std::vector<Triplet> triplets;
  double diagonal = 0, outside = 0;
  for (std::size_t row = 0; row < pairs.size(); ++row) {
    const auto [g, gp] = pairs.classes()[row];
    for (Pair t : {Pair{g - r, gp - rp}, Pair{g - rp, gp - r}}) {
      if (t.first == t.second) {
        ++diagonal;
      } else if (auto col = pairs.index_of(t)) {
        triplets.emplace_back(static_cast<int>(row), static_cast<int>(*col), prefactor);
      } else {
        ++outside;
      }
    }
  }
  LinOp op = LinOp::from_triplets(pairs.domain(), triplets, BoundaryPolicy::zero_pad);
  op.set_metadata("diagonal_drops", diagonal);
  op.set_metadata("out_of_bounds", outside);
  return op;
}

LinOp build_bicrossed_L_nu(const SymLatticePair& pairs, const std::vector<Pair>& omega, double p) {
  const auto om = normalize_omega(omega);
  std::vector<Triplet> triplets;
  double diagonal = 0, outside = 0;
  for (Pair k : om) {
    const LinOp lk = build_bicrossed_L(pairs, k, p);
    for (Eigen::Index row = 0; row < lk.matrix().outerSize(); ++row)
      for (SparseMatrix::InnerIterator it(lk.matrix(), row); it; ++it)
        triplets.emplace_back(static_cast<int>(row), static_cast<int>(it.col()), it.value());
    diagonal += lk.metadata().at("diagonal_drops");
    outside += lk.metadata().at("out_of_bounds");
  }
  LinOp op = LinOp::from_triplets(pairs.domain(), triplets, BoundaryPolicy::zero_pad,
                                  SymmetryCheck::exact, true);
  op.set_metadata("diagonal_drops", diagonal);
  op.set_metadata("out_of_bounds", outside);
  return op;
}

BicrossedVerdict bicrossed_amenability_test(const std::vector<int>& bounds,
                                            const std::vector<Pair>& omega, double p, double tol,
                                            const SolverSettings& solver) {
  const auto om = normalize_omega(omega);
  if (bounds.empty()) throw input_error("no lattice bounds given");
  for (std::size_t i = 1; i < bounds.size(); ++i)
    if (bounds[i] <= bounds[i - 1]) throw input_error("lattice bounds must be strictly increasing");
  if (!(tol > 0)) throw input_error("tolerance must be positive");

  BicrossedVerdict out;
  out.primary.target = 2.0 * static_cast<double>(om.size());
  out.secondary.target = static_cast<double>(om.size());
  out.primary.rule = out.secondary.rule = "residual";
  const auto theta = solve_symbol(om, out.secondary.target);
  if (theta) out.secondary.details.emplace_back("modulation_theta", *theta);

  std::vector<std::pair<std::size_t, double>> trace;
  for (int bound : bounds) {
    const SymLatticePair pairs(bound);
    const LinOp op = build_bicrossed_L_nu(pairs, om, p);

    std::vector<Witness> primary;
    for (int m : {bound / 2, bound}) {
      if (m < 1) continue;
      Vector v = flat_box(pairs, m);
      primary.push_back({"box:" + std::to_string(m), v / v.norm()});
    }
    for (int w : {bound / 2, bound}) {
      if (w < 1) continue;
      Vector v = tapered_box(pairs, w, 0.0);
      primary.push_back({"taper:" + std::to_string(w), v / v.norm()});
    }
    auto cert = in_spectrum(op, out.primary.target, tol, primary, solver.certify_options());
    out.primary.details.emplace_back("best_residual:B=" + std::to_string(bound), cert.best_residual);
    keep_better(out.primary, std::move(cert));

    std::vector<Witness> secondary;
    if (theta) {
      for (int w : {bound / 2, bound}) {
        if (w < 1) continue;
        Vector v = tapered_box(pairs, w, *theta);
        if (v.norm() > 0) secondary.push_back({"taper-mod:" + std::to_string(w), v / v.norm()});
      }
    }
    auto cert2 = in_spectrum(op, out.secondary.target, tol, secondary, solver.certify_options());
    out.secondary.details.emplace_back("best_residual:B=" + std::to_string(bound), cert2.best_residual);
    keep_better(out.secondary, std::move(cert2));

    SpectralReport rep = spectral_radius(op, solver.eig_tol, solver.max_iter, solver.radius_options());
    trace.emplace_back(static_cast<std::size_t>(bound), rep.radius_estimate);
    rep.truncation_trace = trace;
    if (trace.size() >= 2)
      rep.trace_converged = std::abs(trace.back().second - trace[trace.size() - 2].second) < tol;
    out.primary.spectral = out.secondary.spectral = std::move(rep);
  }
  out.primary.certified = out.primary.certificate.certified;
  out.secondary.certified = out.secondary.certificate.certified;
  out.primary.details.emplace_back("omega_classes", static_cast<double>(om.size()));
  return out;
}

}  // namespace qgspec::semidirect
