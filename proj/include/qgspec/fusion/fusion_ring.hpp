#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qgspec::fusion {

using Label = std::size_t;
using Dimension = long double;

struct Channel {
  Label label = 0;
  unsigned multiplicity = 0;
};

struct Decomposition {
  std::vector<Channel> channels;
  std::size_t clipped = 0;  // multiplicity dropped above the closure level
};

struct FusionEntry {
  std::string kappa;
  std::string alpha;
  std::string beta;
  unsigned multiplicity = 0;
};

// Explicit finite ring. labels[0] is the unit.
struct TableDescriptor {
  std::vector<std::string> labels;
  std::vector<Dimension> dims;
  std::vector<std::string> conj;
  std::vector<FusionEntry> fusion;
};

// Generator-closed ring truncated at a level. "free-su2" is the free fusion
// rule a_m (x) a_n = a_|m-n| + a_|m-n|+2 + ... + a_m+n with d_0 = 1, d_1 = N,
// d_{n+1} = N d_n - d_{n-1}: SU(2) for N = 2, O_N^+ for integer N >= 3.
struct RuleDescriptor {
  std::string rule = "free-su2";
  double n = 2.0;
  int level = 1;
};

using RingDescriptor = std::variant<TableDescriptor, RuleDescriptor>;

/// Irr(G) of a compact quantum group as a fusion ring: labels, dimensions,
/// conjugation and tensor-product multiplicities. Use load_ring() to obtain a
/// validated instance; unchecked() exists for the validator.
class FusionRing {
 public:
  static FusionRing unchecked(const RingDescriptor& desc);

  std::size_t size() const noexcept { return names_.size(); }
  Label unit() const noexcept { return 0; }
  const std::string& name(Label label) const;
  std::optional<Label> find(std::string_view name) const;
  Label require(std::string_view name) const;

  /// For rule rings any label up to twice the level is admissible, so
  /// decompositions that leave the closed set can still be weighed.
  Dimension dim(Label label) const;
  Label conj(Label label) const;

  Decomposition decompose(Label kappa, Label alpha) const;
  /// Rule rings: channels above the level are kept (labels >= size()).
  std::vector<Channel> decompose_unclipped(Label kappa, Label alpha) const;
  unsigned multiplicity(Label beta, Label kappa, Label alpha) const;

  bool is_table() const noexcept { return !rule_.has_value(); }
  bool integral_dims() const noexcept { return integral_; }
  const std::optional<RuleDescriptor>& rule() const noexcept { return rule_; }
  std::string describe() const;

 private:
  FusionRing() = default;

  std::vector<std::string> names_;
  std::vector<Dimension> dims_;     // rule rings: labels 0..2*level+1
  std::vector<Label> conj_;
  std::vector<std::vector<std::vector<Channel>>> table_;  // table_[kappa][alpha]
  std::optional<RuleDescriptor> rule_;
  bool integral_ = true;
};

struct AxiomResult {
  std::string axiom;
  bool passed = true;
  std::string detail;
};

/// Runs every ring axiom and reports each one. Table rings are checked
/// exhaustively; rule rings on the ranges where truncation cannot interfere.
std::vector<AxiomResult> check_axioms(const FusionRing& ring);

/// Builds the ring and throws validation_error naming the first failing axiom.
FusionRing load_ring(const RingDescriptor& desc);

/// Equality used by the dimension identities: exact for integral dims that are
/// exactly representable, 1e-9 relative otherwise.
bool dims_agree(Dimension lhs, Dimension rhs, bool integral);

}  // namespace qgspec::fusion
