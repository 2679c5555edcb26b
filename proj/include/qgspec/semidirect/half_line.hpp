#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "qgspec/core/lin_op.hpp"
#include "qgspec/core/spectral.hpp"

namespace qgspec::semidirect {

/// Irr(R x| Z_2) = R_{>0} with measure dr/4pi, sampled at s_j = (j + 1/2) h,
/// j = 0 .. floor(max_r/h) - 1. Every point has dim 2 and cell mass h/(4 pi).
class HalfLineGrid {
 public:
  HalfLineGrid(double h, double max_r);

  double h() const noexcept { return h_; }
  double max_r() const noexcept { return max_r_; }
  std::size_t size() const noexcept { return n_; }
  double point(std::size_t j) const noexcept { return (static_cast<double>(j) + 0.5) * h_; }
  double cell_mass() const noexcept;
  std::shared_ptr<const SpectrumDomain> domain() const { return domain_; }

 private:
  double h_;
  double max_r_;
  std::size_t n_;
  std::shared_ptr<const SpectrumDomain> domain_;
};

/// The three shift pieces of L_{sigma_r} with r snapped to k h:
/// shift f(s - r), plus f(s + r), minus f(r - s), each a 0/1 matrix.
struct SigmaComponents {
  SparseMatrix shift;
  SparseMatrix plus;
  SparseMatrix minus;
  long k = 0;
  double snapped_r = 0.0;
  double snap_delta = 0.0;  // snapped_r - r
};

SigmaComponents sigma_r_components(const HalfLineGrid& grid, double r);

/// L_r + L+_{-r} + L-_{-r} on the grid, zero-padded outside (0, max_r].
LinOp build_L_sigma_r(const HalfLineGrid& grid, double r);

struct IntervalOperator {
  LinOp op;
  double target = 0.0;     // 2 mu(Omega_snapped)
  double a_snapped = 0.0;
  double b_snapped = 0.0;
  std::size_t nodes = 0;   // quadrature nodes r = k h inside Omega_snapped
};

/// L_nu = int_Omega L_{sigma_r} dr/4pi for Omega = (a, b], by the midpoint
/// rule on the cells ((k - 1/2) h, (k + 1/2) h], k >= 1, that meet Omega.
IntervalOperator build_L_nu_interval(const HalfLineGrid& grid, double a, double b);

/// f_m = sqrt(4 pi / m) chi_[m, 2m] sampled on the grid, unit in the
/// h/(4 pi)-weighted norm.
Vector window_witness(const HalfLineGrid& grid, double m);

/// Residuals of f_m for every m at target 2 mu(Omega), plus the Lanczos vector.
AmenabilityVerdict interval_test(const HalfLineGrid& grid, double a, double b,
                                 const std::vector<double>& ms, double tol = kDefaultCertifyTol,
                                 const SolverSettings& solver = {});

}  // namespace qgspec::semidirect
