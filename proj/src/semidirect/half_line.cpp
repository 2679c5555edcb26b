#include "qgspec/semidirect/half_line.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qgspec/core/errors.hpp"

namespace qgspec::semidirect {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SparseMatrix from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& entries) {
  std::vector<Triplet> t;
  t.reserve(entries.size());
  for (auto [row, col] : entries) t.emplace_back(static_cast<int>(row), static_cast<int>(col), 1.0);
  SparseMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

HalfLineGrid::HalfLineGrid(double h, double max_r) : h_(h), max_r_(max_r) {
  if (!(h > 0) || !std::isfinite(h)) throw input_error("grid step h must be positive");
  if (!(max_r >= h) || !std::isfinite(max_r)) throw input_error("max_r must be at least h");
  n_ = static_cast<std::size_t>(std::floor(max_r / h + 1e-9));
  std::vector<std::string> names;
  names.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) names.push_back(fmt(point(j)));
  domain_ = std::make_shared<const SpectrumDomain>(DomainKind::uniform_grid, std::move(names),
                                                   std::vector<double>(n_, 2.0),
                                                   std::vector<double>(n_, cell_mass()));
}

double HalfLineGrid::cell_mass() const noexcept { return h_ / (4 * std::numbers::pi); }

SigmaComponents sigma_r_components(const HalfLineGrid& grid, double r) {
  if (!(r > 0) || !std::isfinite(r)) throw input_error("r must be positive");
  if (r >= grid.max_r()) throw input_error("r >= max_r: the operator would be entirely off-grid");
  const long k = std::lround(r / grid.h());
  if (k == 0) throw input_error("r = " + fmt(r) + " snaps to 0 on a grid of step " + fmt(grid.h()));

  const auto n = static_cast<long>(grid.size());
  std::vector<std::pair<std::size_t, std::size_t>> shift, plus, minus;
  for (long j = 0; j < n; ++j) {
    const auto row = static_cast<std::size_t>(j);
    if (j - k >= 0) shift.emplace_back(row, static_cast<std::size_t>(j - k));
    if (j + k < n) plus.emplace_back(row, static_cast<std::size_t>(j + k));
    // r - s_j = (k - 1 - j + 1/2) h
    if (k - 1 - j >= 0 && k - 1 - j < n) minus.emplace_back(row, static_cast<std::size_t>(k - 1 - j));
  }
  SigmaComponents c;
  c.shift = from_pairs(grid.size(), shift);
  c.plus = from_pairs(grid.size(), plus);
  c.minus = from_pairs(grid.size(), minus);
  c.k = k;
  c.snapped_r = static_cast<double>(k) * grid.h();
  c.snap_delta = c.snapped_r - r;
  return c;
}

LinOp build_L_sigma_r(const HalfLineGrid& grid, double r) {
  const auto c = sigma_r_components(grid, r);
  SparseMatrix sum = c.shift + c.plus + c.minus;
  LinOp op(grid.domain(), std::move(sum), BoundaryPolicy::zero_pad, SymmetryCheck::exact, true);
  op.set_metadata("snapped_r", c.snapped_r);
  op.set_metadata("snap_delta", c.snap_delta);
  return op;
}

IntervalOperator build_L_nu_interval(const HalfLineGrid& grid, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a < 0 || b > grid.max_r())
    throw input_error("interval must lie in [0, max_r]");
  if (!(b > a)) throw input_error("degenerate interval (" + fmt(a) + ", " + fmt(b) + "]");

  const double h = grid.h();
  const long n = static_cast<long>(grid.size());
  const long k_lo = std::max(1L, static_cast<long>(std::floor(a / h - 0.5)) + 1);
  const long k_hi = std::min(n - 1, static_cast<long>(std::ceil(b / h + 0.5)) - 1);

  IntervalOperator out{LinOp::zero(grid.domain()), 0.0, a, a, 0};
  if (k_hi < k_lo) return out;

  const double w = grid.cell_mass();
  std::vector<Triplet> triplets;
  for (long k = k_lo; k <= k_hi; ++k) {
    const auto c = sigma_r_components(grid, static_cast<double>(k) * h);
    for (const SparseMatrix* m : {&c.shift, &c.plus, &c.minus})
      for (Eigen::Index row = 0; row < m->outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(*m, row); it; ++it)
          triplets.emplace_back(static_cast<int>(row), static_cast<int>(it.col()), w);
  }
  out.op = LinOp::from_triplets(grid.domain(), triplets, BoundaryPolicy::zero_pad,
                                SymmetryCheck::quadrature, true);
  out.nodes = static_cast<std::size_t>(k_hi - k_lo + 1);
  out.a_snapped = (static_cast<double>(k_lo) - 0.5) * h;
  out.b_snapped = (static_cast<double>(k_hi) + 0.5) * h;
  out.target = 2.0 * static_cast<double>(out.nodes) * w;
  out.op.set_metadata("a_snapped", out.a_snapped);
  out.op.set_metadata("b_snapped", out.b_snapped);
  out.op.set_metadata("quadrature_nodes", static_cast<double>(out.nodes));
  return out;
}

Vector window_witness(const HalfLineGrid& grid, double m) {
  if (!(m > 0) || !std::isfinite(m)) throw input_error("m must be positive");
  if (2 * m > grid.max_r()) throw input_error("2m exceeds max_r");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(grid.size()));
  std::size_t count = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double s = grid.point(j);
    if (s >= m && s <= 2 * m) {
      v[static_cast<Eigen::Index>(j)] = 1.0;
      ++count;
    }
  }
  if (count == 0) throw input_error("[m, 2m] contains no grid point");
  return v / std::sqrt(static_cast<double>(count) * grid.cell_mass());
}

AmenabilityVerdict interval_test(const HalfLineGrid& grid, double a, double b,
                                 const std::vector<double>& ms, double tol,
                                 const SolverSettings& solver) {
  if (!(tol > 0)) throw input_error("tolerance must be positive");
  const auto iv = build_L_nu_interval(grid, a, b);
  std::vector<Witness> witnesses;
  for (double m : ms) witnesses.push_back({"f_m:" + fmt(m), window_witness(grid, m)});

  AmenabilityVerdict v;
  v.target = iv.target;
  v.rule = "residual";
  v.certificate = in_spectrum(iv.op, iv.target, tol, witnesses, solver.certify_options());
  v.spectral = spectral_radius(iv.op, solver.eig_tol, solver.max_iter, solver.radius_options());
  v.certified = v.certificate.certified;
  v.details = {{"a_snapped", iv.a_snapped},
               {"b_snapped", iv.b_snapped},
               {"quadrature_nodes", static_cast<double>(iv.nodes)}};
  for (std::size_t i = 0; i < ms.size(); ++i)
    v.details.emplace_back("residual:m=" + fmt(ms[i]), residual(iv.op, witnesses[i].vector, iv.target));
  return v;
}

}  // namespace qgspec::semidirect
