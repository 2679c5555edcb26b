#include "qgspec/walk/ball.hpp"

#include "qgspec/core/errors.hpp"

namespace qgspec::walk {

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::size_t h = e.size();
  for (int x : e) h ^= std::hash<int>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

BallTruncation::BallTruncation(const GroupModel& group, int radius) : radius_(radius) {
  if (radius < 0) throw input_error("ball radius must be >= 0");
  elements_.push_back(group.identity());
  index_.emplace(elements_.front(), 0);
  std::size_t layer_begin = 0;
  for (int r = 0; r < radius; ++r) {
    const std::size_t layer_end = elements_.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (Letter s : group.generators()) {
        Element next = group.neighbor(elements_[i], s);
        if (index_.count(next)) continue;
        index_.emplace(next, elements_.size());
        elements_.push_back(std::move(next));
      }
    }
    layer_begin = layer_end;
  }

  std::vector<std::string> names;
  names.reserve(elements_.size());
  for (const auto& e : elements_) names.push_back(group.format(e));
  const std::size_t n = elements_.size();
  domain_ = std::make_shared<const SpectrumDomain>(DomainKind::discrete_labels, std::move(names),
                                                   std::vector<double>(n, 1.0),
                                                   std::vector<double>(n, 1.0));
}

std::optional<std::size_t> BallTruncation::index_of(const Element& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace qgspec::walk
