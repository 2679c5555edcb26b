#include "qgspec/core/lin_op.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qgspec/core/errors.hpp"

namespace qgspec {

std::string_view to_string(BoundaryPolicy policy) {
  switch (policy) {
    case BoundaryPolicy::zero_pad:
      return "zero-pad";
    case BoundaryPolicy::none:
      return "none";
  }
  return "unknown";
}

double max_asymmetry(const SparseMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const SparseMatrix t = m.transpose();
  const SparseMatrix diff = m - t;
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

LinOp::LinOp(std::shared_ptr<const SpectrumDomain> domain, SparseMatrix entries,
             BoundaryPolicy policy, SymmetryCheck check, bool assert_symmetric)
    : domain_(std::move(domain)), entries_(std::move(entries)), policy_(policy), check_(check) {
  if (!domain_) throw input_error("LinOp: null domain");
  const auto n = static_cast<Eigen::Index>(domain_->size());
  if (entries_.rows() != n || entries_.cols() != n)
    throw input_error("LinOp: matrix shape does not match the domain");
  entries_.makeCompressed();
  for (int k = 0; k < entries_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(entries_, k); it; ++it)
      if (!std::isfinite(it.value()))
        throw input_error("LinOp: non-finite entry at (" + std::to_string(it.row()) + "," +
                          std::to_string(it.col()) + ")");

  symmetry_defect_ = max_asymmetry(entries_);
  const double allowed = check_ == SymmetryCheck::exact ? 0.0 : kQuadratureSymmetryTol;
  symmetric_ = symmetry_defect_ <= allowed;
  if (assert_symmetric && !symmetric_)
    throw std::logic_error("LinOp: builder asserted symmetry, defect " +
                           std::to_string(symmetry_defect_));
}

LinOp LinOp::identity(std::shared_ptr<const SpectrumDomain> domain) {
  const auto n = static_cast<Eigen::Index>(domain->size());
  SparseMatrix m(n, n);
  m.setIdentity();
  return LinOp(std::move(domain), std::move(m), BoundaryPolicy::none, SymmetryCheck::exact, true);
}

LinOp LinOp::zero(std::shared_ptr<const SpectrumDomain> domain) {
  const auto n = static_cast<Eigen::Index>(domain->size());
  return LinOp(std::move(domain), SparseMatrix(n, n), BoundaryPolicy::none, SymmetryCheck::exact,
               true);
}

LinOp LinOp::from_triplets(std::shared_ptr<const SpectrumDomain> domain,
                           const std::vector<Triplet>& triplets, BoundaryPolicy policy,
                           SymmetryCheck check, bool assert_symmetric) {
  const auto n = static_cast<Eigen::Index>(domain->size());
  SparseMatrix m(n, n);
  for (const auto& t : triplets)
    if (t.row() < 0 || t.row() >= n || t.col() < 0 || t.col() >= n)
      throw input_error("LinOp: entry outside the domain");
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(0.0);
  return LinOp(std::move(domain), std::move(m), policy, check, assert_symmetric);
}

Vector LinOp::apply(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != size())
    throw input_error("apply: vector length " + std::to_string(v.size()) +
                      " does not match truncation size " + std::to_string(size()));
  return entries_ * v;
}

double LinOp::entry(std::size_t row, std::size_t col) const {
  return entries_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

Eigen::MatrixXd LinOp::to_dense() const { return Eigen::MatrixXd(entries_); }

LinOp LinOp::transpose() const {
  SparseMatrix t = entries_.transpose();
  LinOp out(domain_, std::move(t), policy_, check_);
  out.metadata_ = metadata_;
  return out;
}

}  // namespace qgspec
