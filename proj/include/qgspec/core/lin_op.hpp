#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qgspec/core/spectrum_domain.hpp"

namespace qgspec {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

enum class BoundaryPolicy { zero_pad, none };

std::string_view to_string(BoundaryPolicy policy);

// Tolerance used when verifying a symmetry claim.
enum class SymmetryCheck {
  exact,       // discrete builders: max |A_ij - A_ji| == 0
  quadrature,  // quadrature builders: <= 1e-12
};

inline constexpr double kQuadratureSymmetryTol = 1e-12;

/// A finite truncation of an operator on the weighted l^2 / L^2 space over a
/// SpectrumDomain. Entries are stored row-major; duplicate triplets are summed.
///
/// The builder may assert symmetry. The claim is verified on construction and
/// a failed claim is a programming error (std::logic_error). Without a claim
/// the flag is still computed, at the requested tolerance.
class LinOp {
 public:
  LinOp(std::shared_ptr<const SpectrumDomain> domain, SparseMatrix entries,
        BoundaryPolicy policy, SymmetryCheck check = SymmetryCheck::exact,
        bool assert_symmetric = false);

  static LinOp identity(std::shared_ptr<const SpectrumDomain> domain);
  static LinOp zero(std::shared_ptr<const SpectrumDomain> domain);
  static LinOp from_triplets(std::shared_ptr<const SpectrumDomain> domain,
                             const std::vector<Triplet>& triplets,
                             BoundaryPolicy policy,
                             SymmetryCheck check = SymmetryCheck::exact,
                             bool assert_symmetric = false);

  /// Returns A v. Throws input_error on a length mismatch.
  Vector apply(const Vector& v) const;

  std::size_t size() const noexcept { return domain_->size(); }
  std::size_t nnz() const noexcept { return static_cast<std::size_t>(entries_.nonZeros()); }
  const SpectrumDomain& domain() const noexcept { return *domain_; }
  const std::shared_ptr<const SpectrumDomain>& domain_ptr() const noexcept { return domain_; }
  const SparseMatrix& matrix() const noexcept { return entries_; }
  BoundaryPolicy boundary_policy() const noexcept { return policy_; }

  bool symmetric() const noexcept { return symmetric_; }
  double symmetry_defect() const noexcept { return symmetry_defect_; }

  double entry(std::size_t row, std::size_t col) const;
  Eigen::MatrixXd to_dense() const;
  LinOp transpose() const;

  /// Truncation bookkeeping (clipped channels, snap deltas, ...).
  const std::map<std::string, double>& metadata() const noexcept { return metadata_; }
  void set_metadata(const std::string& key, double value) { metadata_[key] = value; }

 private:
  std::shared_ptr<const SpectrumDomain> domain_;
  SparseMatrix entries_;
  BoundaryPolicy policy_;
  SymmetryCheck check_;
  bool symmetric_ = false;
  double symmetry_defect_ = 0.0;
  std::map<std::string, double> metadata_;
};

double max_asymmetry(const SparseMatrix& m);

}  // namespace qgspec
