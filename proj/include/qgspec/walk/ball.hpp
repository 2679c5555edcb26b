#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qgspec/core/spectrum_domain.hpp"
#include "qgspec/walk/group_model.hpp"

namespace qgspec::walk {

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// All elements of word length <= radius, in breadth-first order.
class BallTruncation {
 public:
  BallTruncation(const GroupModel& group, int radius);

  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::optional<std::size_t> index_of(const Element& e) const;

  /// Counting measure, unit dimensions.
  std::shared_ptr<const SpectrumDomain> domain() const { return domain_; }

 private:
  int radius_;
  std::vector<Element> elements_;
  std::unordered_map<Element, std::size_t, ElementHash> index_;
  std::shared_ptr<const SpectrumDomain> domain_;
};

}  // namespace qgspec::walk
