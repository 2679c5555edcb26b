#include "qgspec/core/spectrum_domain.hpp"

#include <cmath>
#include <numeric>

#include "qgspec/core/errors.hpp"

namespace qgspec {

std::string_view to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::discrete_labels:
      return "discrete-labels";
    case DomainKind::uniform_grid:
      return "uniform-grid";
  }
  return "unknown";
}

SpectrumDomain::SpectrumDomain(DomainKind kind, std::vector<std::string> points,
                               std::vector<double> dim_weight,
                               std::vector<double> quad_weight)
    : kind_(kind),
      points_(std::move(points)),
      dim_weight_(std::move(dim_weight)),
      quad_weight_(std::move(quad_weight)) {
  if (points_.empty()) throw input_error("SpectrumDomain: no points");
  if (dim_weight_.size() != points_.size() || quad_weight_.size() != points_.size())
    throw input_error("SpectrumDomain: weight vectors do not match the point list");

  index_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!index_.emplace(points_[i], i).second)
      throw input_error("SpectrumDomain: duplicate point '" + points_[i] + "'");
    const double d = dim_weight_[i];
    if (!(d > 0.0) || std::isnan(d))
      throw input_error("SpectrumDomain: non-positive dim at '" + points_[i] + "'");
    if (kind_ == DomainKind::discrete_labels && d < 1.0)
      throw input_error("SpectrumDomain: dim < 1 at label '" + points_[i] + "'");
    if (!(quad_weight_[i] > 0.0) || !std::isfinite(quad_weight_[i]))
      throw input_error("SpectrumDomain: non-positive measure at '" + points_[i] + "'");
  }
}

std::optional<std::size_t> SpectrumDomain::index_of(std::string_view point) const {
  auto it = index_.find(std::string(point));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double SpectrumDomain::total_measure() const {
  return std::accumulate(quad_weight_.begin(), quad_weight_.end(), 0.0);
}

}  // namespace qgspec
