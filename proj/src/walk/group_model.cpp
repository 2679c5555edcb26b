#include "qgspec/walk/group_model.hpp"

#include <charconv>
#include <cstdlib>
#include <random>

#include "qgspec/core/errors.hpp"

namespace qgspec::walk {

GroupModel::GroupModel(std::string name, bool free, int rank)
    : name_(std::move(name)), free_(free), rank_(rank) {
  for (int i = 1; i <= rank; ++i) {
    generators_.push_back(i);
    generators_.push_back(-i);
  }
}

GroupModel GroupModel::integer_lattice(int d) {
  if (d < 0 || d > 16) throw input_error("Z^d needs 0 <= d <= 16");
  return GroupModel("Z^d:" + std::to_string(d), false, d);
}

GroupModel GroupModel::free_group(int k) {
  if (k < 1 || k > 64) throw input_error("F:k needs 1 <= k <= 64");
  return GroupModel("F:" + std::to_string(k), true, k);
}

GroupModel GroupModel::parse(std::string_view spec) {
  auto number = [&](std::string_view digits) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
      throw input_error("bad group spec '" + std::string(spec) + "'");
    return v;
  };
  if (spec.starts_with("Z^d:")) return integer_lattice(number(spec.substr(4)));
  if (spec.starts_with("F:")) return free_group(number(spec.substr(2)));
  throw input_error("bad group spec '" + std::string(spec) + "' (expected Z^d:<d> or F:<k>)");
}

Element GroupModel::identity() const { return free_ ? Element{} : Element(rank_, 0); }

Element GroupModel::element(Letter s) const {
  if (!is_letter(s)) throw input_error("letter " + std::to_string(s) + " is not a generator of " + name_);
  Element e = identity();
  if (s == 0) return e;
  if (free_) return {s};
  e[std::abs(s) - 1] = s > 0 ? 1 : -1;
  return e;
}

Element GroupModel::multiply(const Element& a, const Element& b) const {
  if (!free_) {
    Element out = a;
    for (int i = 0; i < rank_; ++i) out[i] += b[i];
    return out;
  }
  Element out = a;
  for (int s : b) {
    if (!out.empty() && out.back() == -s)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

Element GroupModel::inverse(const Element& a) const {
  Element out;
  if (!free_) {
    for (int x : a) out.push_back(-x);
    return out;
  }
  for (auto it = a.rbegin(); it != a.rend(); ++it) out.push_back(-*it);
  return out;
}

Element GroupModel::neighbor(const Element& g, Letter s) const {
  if (!is_letter(s)) throw input_error("letter " + std::to_string(s) + " is not a generator of " + name_);
  if (s == 0) return g;
  Element out = g;
  if (!free_) {
    out[std::abs(s) - 1] += s > 0 ? 1 : -1;
  } else if (!out.empty() && out.back() == -s) {
    out.pop_back();
  } else {
    out.push_back(s);
  }
  return out;
}

int GroupModel::word_length(const Element& a) const {
  if (free_) return static_cast<int>(a.size());
  int len = 0;
  for (int x : a) len += std::abs(x);
  return len;
}

std::string GroupModel::format(const Element& a) const {
  std::string out;
  if (!free_) {
    out = "(";
    for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
    return out + ")";
  }
  if (a.empty()) return "e";
  for (int s : a) {
    if (rank_ <= 26) {
      out += static_cast<char>((s > 0 ? 'a' : 'A') + std::abs(s) - 1);
    } else {
      if (!out.empty()) out += '.';
      out += (s > 0 ? "g" : "G") + std::to_string(std::abs(s));
    }
  }
  return out;
}

bool GroupModel::check_action(std::size_t samples, std::uint64_t seed) const {
  if (generators_.empty()) return true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, generators_.size() - 1);
  std::uniform_int_distribution<int> len(0, 8);
  for (std::size_t n = 0; n < samples; ++n) {
    Element g = identity();
    for (int i = len(rng); i > 0; --i) g = neighbor(g, generators_[pick(rng)]);
    for (Letter s : generators_) {
      const Element gs = neighbor(g, s);
      if (gs == g || neighbor(gs, -s) != g) return false;
    }
  }
  return true;
}

}  // namespace qgspec::walk
