#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qgspec::walk {

// Z^d: the coordinate vector. F_k: the reduced word, letters +-1..+-k.
using Element = std::vector<int>;

// Generator letters are +-i for the i-th basis element (1-based); 0 names the
// identity so that Omega = {e} can be written down.
using Letter = int;

/// A discrete, unimodular group with a finite symmetric generating set.
/// Built-ins are Z^d and the free group F_k.
class GroupModel {
 public:
  static GroupModel integer_lattice(int d);
  static GroupModel free_group(int k);
  /// "Z^d:<d>" or "F:<k>".
  static GroupModel parse(std::string_view spec);

  const std::string& name() const noexcept { return name_; }
  bool is_free() const noexcept { return free_; }
  int rank() const noexcept { return rank_; }
  /// +1, -1, +2, -2, ...
  const std::vector<Letter>& generators() const noexcept { return generators_; }
  bool is_letter(Letter s) const noexcept { return s == 0 || (s >= -rank_ && s <= rank_); }

  Element identity() const;
  Element element(Letter s) const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  /// g * s, the right action of a generator.
  Element neighbor(const Element& g, Letter s) const;
  int word_length(const Element& a) const;

  /// The modular function; identically 1 for the built-in groups.
  double modular(const Element&) const noexcept { return 1.0; }

  std::string format(const Element& a) const;

  /// Samples random elements and checks g s s^-1 = g and g s != g.
  bool check_action(std::size_t samples, std::uint64_t seed = 7) const;

 private:
  GroupModel(std::string name, bool free, int rank);

  std::string name_;
  bool free_ = false;
  int rank_ = 0;
  std::vector<Letter> generators_;
};

}  // namespace qgspec::walk
