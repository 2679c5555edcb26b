#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qgspec {

enum class DomainKind { discrete_labels, uniform_grid };

std::string_view to_string(DomainKind kind);

/// Truncated model of (Irr(G), mu): an ordered list of points with the
/// dimension function and the quadrature weight (measure of the atom or cell)
/// attached to each point. Immutable once built.
class SpectrumDomain {
 public:
  SpectrumDomain(DomainKind kind, std::vector<std::string> points,
                 std::vector<double> dim_weight, std::vector<double> quad_weight);

  DomainKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::vector<double>& dim_weight() const noexcept { return dim_weight_; }
  const std::vector<double>& quad_weight() const noexcept { return quad_weight_; }

  std::optional<std::size_t> index_of(std::string_view point) const;

  /// Sum of quadrature weights, i.e. mu of the truncated domain.
  double total_measure() const;

 private:
  DomainKind kind_;
  std::vector<std::string> points_;
  std::vector<double> dim_weight_;
  std::vector<double> quad_weight_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace qgspec
