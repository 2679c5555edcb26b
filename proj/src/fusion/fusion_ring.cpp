#include "qgspec/fusion/fusion_ring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "qgspec/core/errors.hpp"

namespace qgspec::fusion {
namespace {

std::string fmt_dim(Dimension d) {
  std::ostringstream os;
  os.precision(std::numeric_limits<Dimension>::digits10);
  os << d;
  return os.str();
}

bool is_integer(Dimension d) { return std::isfinite(d) && std::floor(d) == d; }

unsigned rule_multiplicity(Label beta, Label kappa, Label alpha) {
  const Label lo = kappa > alpha ? kappa - alpha : alpha - kappa;
  const Label hi = kappa + alpha;
  if (beta < lo || beta > hi) return 0;
  return (hi - beta) % 2 == 0 ? 1u : 0u;
}

}  // namespace

bool dims_agree(Dimension lhs, Dimension rhs, bool integral) {
  constexpr Dimension exact_limit = 9.2233720368547758e18L;  // 2^63
  if (integral && std::abs(lhs) < exact_limit && std::abs(rhs) < exact_limit) return lhs == rhs;
  const Dimension scale = std::max(std::abs(lhs), std::abs(rhs));
  return std::abs(lhs - rhs) <= 1e-9L * scale;
}

FusionRing FusionRing::unchecked(const RingDescriptor& desc) {
  FusionRing ring;
  if (const auto* rule = std::get_if<RuleDescriptor>(&desc)) {
    if (rule->rule != "free-su2") throw parse_error("unknown fusion rule '" + rule->rule + "'");
    if (rule->level < 1) throw parse_error("closure level must be >= 1");
    if (!(rule->n > 0.0) || !std::isfinite(rule->n)) throw parse_error("N must be positive");
    ring.rule_ = *rule;
    const auto levels = static_cast<std::size_t>(rule->level) + 1;
    for (std::size_t i = 0; i < levels; ++i) {
      ring.names_.push_back("a" + std::to_string(i));
      ring.conj_.push_back(i);
    }
    const auto n = static_cast<Dimension>(rule->n);
    ring.dims_.resize(2 * levels + 1);
    ring.dims_[0] = 1;
    ring.dims_[1] = n;
    for (std::size_t i = 2; i < ring.dims_.size(); ++i)
      ring.dims_[i] = n * ring.dims_[i - 1] - ring.dims_[i - 2];
    ring.integral_ = is_integer(n);
    return ring;
  }

  const auto& table = std::get<TableDescriptor>(desc);
  const std::size_t size = table.labels.size();
  if (size == 0) throw parse_error("table ring has no labels");
  if (table.dims.size() != size) throw parse_error("dims must have one entry per label");
  if (table.conj.size() != size) throw parse_error("conj must have one entry per label");
  ring.names_ = table.labels;
  std::map<std::string, Label, std::less<>> index;
  for (Label i = 0; i < size; ++i)
    if (!index.emplace(table.labels[i], i).second)
      throw parse_error("duplicate label '" + table.labels[i] + "'");
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw parse_error("unknown label '" + name + "'");
    return it->second;
  };
  ring.dims_ = table.dims;
  for (const auto& c : table.conj) ring.conj_.push_back(lookup(c));
  ring.integral_ = std::all_of(ring.dims_.begin(), ring.dims_.end(), is_integer);

  ring.table_.assign(size, std::vector<std::vector<Channel>>(size));
  for (const auto& e : table.fusion) {
    const Label k = lookup(e.kappa), a = lookup(e.alpha), b = lookup(e.beta);
    if (e.multiplicity == 0) continue;
    auto& cell = ring.table_[k][a];
    if (std::any_of(cell.begin(), cell.end(), [&](const Channel& c) { return c.label == b; }))
      throw parse_error("duplicate fusion entry " + e.kappa + "," + e.alpha + "," + e.beta);
    cell.push_back({b, e.multiplicity});
  }
  for (auto& row : ring.table_)
    for (auto& cell : row)
      std::sort(cell.begin(), cell.end(),
                [](const Channel& x, const Channel& y) { return x.label < y.label; });
  return ring;
}

const std::string& FusionRing::name(Label label) const {
  if (label >= size()) throw input_error("label index " + std::to_string(label) + " out of range");
  return names_[label];
}

std::optional<Label> FusionRing::find(std::string_view name) const {
  if (rule_) {
    // a<n>, accepted for any n in the closed set
    if (name.size() < 2 || name[0] != 'a') return std::nullopt;
    Label v = 0;
    for (char c : name.substr(1)) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + static_cast<Label>(c - '0');
      if (v >= size()) return std::nullopt;
    }
    return v;
  }
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Label>(it - names_.begin());
}

Label FusionRing::require(std::string_view name) const {
  if (auto l = find(name)) return *l;
  throw input_error("unknown label '" + std::string(name) + "'");
}

Dimension FusionRing::dim(Label label) const {
  if (label >= dims_.size()) throw input_error("no dimension for label index " + std::to_string(label));
  return dims_[label];
}

Label FusionRing::conj(Label label) const {
  if (label >= size()) throw input_error("label index " + std::to_string(label) + " out of range");
  return conj_[label];
}

Decomposition FusionRing::decompose(Label kappa, Label alpha) const {
  if (kappa >= size() || alpha >= size()) throw input_error("decompose: label out of range");
  Decomposition out;
  if (rule_) {
    const Label lo = kappa > alpha ? kappa - alpha : alpha - kappa;
    for (Label b = lo; b <= kappa + alpha; b += 2) {
      if (b < size())
        out.channels.push_back({b, 1});
      else
        ++out.clipped;
    }
    return out;
  }
  out.channels = table_[kappa][alpha];
  return out;
}

std::vector<Channel> FusionRing::decompose_unclipped(Label kappa, Label alpha) const {
  if (!rule_) return decompose(kappa, alpha).channels;
  std::vector<Channel> out;
  const Label lo = kappa > alpha ? kappa - alpha : alpha - kappa;
  for (Label b = lo; b <= kappa + alpha; b += 2) out.push_back({b, 1});
  return out;
}

unsigned FusionRing::multiplicity(Label beta, Label kappa, Label alpha) const {
  if (rule_) return rule_multiplicity(beta, kappa, alpha);
  if (beta >= size() || kappa >= size() || alpha >= size())
    throw input_error("multiplicity: label out of range");
  for (const auto& c : table_[kappa][alpha])
    if (c.label == beta) return c.multiplicity;
  return 0;
}

std::string FusionRing::describe() const {
  if (rule_) {
    std::ostringstream os;
    os << rule_->rule << "(N=" << rule_->n << ", level=" << rule_->level << ")";
    return os.str();
  }
  return "table(" + std::to_string(size()) + " labels)";
}

std::vector<AxiomResult> check_axioms(const FusionRing& ring) {
  const std::size_t n = ring.size();
  const bool table = ring.is_table();
  const bool integral = ring.integral_dims();
  auto nm = [&](Label l) { return l < n ? ring.name(l) : "a" + std::to_string(l); };

  std::vector<AxiomResult> out;
  auto record = [&](std::string axiom, std::string failure) {
    out.push_back({std::move(axiom), failure.empty(), std::move(failure)});
  };

  {
    std::string fail;
    for (Label a = 0; a < n && fail.empty(); ++a)
      if (!(ring.dim(a) >= 1) || !std::isfinite(ring.dim(a)))
        fail = nm(a) + ": dim " + fmt_dim(ring.dim(a)) + " < 1";
    record("dimension positivity", fail);
  }
  record("unit self-conjugate",
         ring.conj(ring.unit()) == ring.unit() ? "" : "conj(unit) = " + nm(ring.conj(ring.unit())));
  {
    std::string fail;
    for (Label a = 0; a < n && fail.empty(); ++a)
      if (ring.conj(ring.conj(a)) != a)
        fail = "conj(conj(" + nm(a) + ")) = " + nm(ring.conj(ring.conj(a)));
    record("conjugation involution", fail);
  }
  {
    std::string fail;
    for (Label a = 0; a < n && fail.empty(); ++a)
      if (!dims_agree(ring.dim(ring.conj(a)), ring.dim(a), integral))
        fail = nm(a) + ": dim " + fmt_dim(ring.dim(a)) + " vs conj " + fmt_dim(ring.dim(ring.conj(a)));
    record("conjugation preserves dimension", fail);
  }
  {
    std::string fail;
    for (Label a = 0; a < n && fail.empty(); ++a) {
      for (const auto& d : {ring.decompose(ring.unit(), a), ring.decompose(a, ring.unit())}) {
        const bool ok = d.clipped == 0 && d.channels.size() == 1 && d.channels[0].label == a &&
                        d.channels[0].multiplicity == 1;
        if (!ok) {
          fail = "unit (x) " + nm(a) + " is not " + nm(a);
          break;
        }
      }
    }
    record("unit identity", fail);
  }
  {
    std::string fail;
    auto check_pair = [&](Label k, Label a) {
      Dimension rhs = 0;
      for (const auto& c : ring.decompose_unclipped(k, a)) rhs += c.multiplicity * ring.dim(c.label);
      const Dimension lhs = ring.dim(k) * ring.dim(a);
      if (!dims_agree(lhs, rhs, integral))
        fail = "kappa=" + nm(k) + " alpha=" + nm(a) + ": " + fmt_dim(lhs) + " != " + fmt_dim(rhs);
    };
    if (table) {
      for (Label k = 0; k < n && fail.empty(); ++k)
        for (Label a = 0; a < n && fail.empty(); ++a) check_pair(k, a);
    } else {
      const Label bound = std::min<Label>(n - 1, 128);
      for (Label k = 0; k <= bound && fail.empty(); ++k)
        for (Label a = 0; k + a <= bound && fail.empty(); ++a) check_pair(k, a);
      for (Label a = 0; a < n && fail.empty(); ++a) check_pair(1, a);
    }
    record("dimension homomorphism", fail);
  }

  const Label frob_n = table ? n : std::min<Label>(n, 25);
  {
    std::string fail;
    for (Label k = 0; k < frob_n && fail.empty(); ++k)
      for (Label a = 0; a < frob_n && fail.empty(); ++a)
        for (Label b = 0; b < frob_n && fail.empty(); ++b)
          if (ring.multiplicity(b, k, a) != ring.multiplicity(a, ring.conj(k), b))
            fail = "mult(" + nm(b) + " in " + nm(k) + "(x)" + nm(a) + ") != mult(" + nm(a) + " in " +
                   nm(ring.conj(k)) + "(x)" + nm(b) + ")";
    record("Frobenius symmetry", fail);
  }

  const Label assoc_n = table ? n : std::min<Label>(n, 13);
  {
    std::string fail;
    for (Label k = 0; k < assoc_n && fail.empty(); ++k)
      for (Label l = 0; l < assoc_n && fail.empty(); ++l) {
        const auto kl = ring.decompose_unclipped(k, l);
        for (Label a = 0; a < assoc_n && fail.empty(); ++a) {
          const auto la = ring.decompose_unclipped(l, a);
          for (Label b = 0; b < assoc_n && fail.empty(); ++b) {
            unsigned long lhs = 0, rhs = 0;
            for (const auto& g : la) lhs += g.multiplicity * ring.multiplicity(b, k, g.label);
            for (const auto& m : kl) rhs += m.multiplicity * ring.multiplicity(b, m.label, a);
            if (lhs != rhs)
              fail = "(N_" + nm(k) + " N_" + nm(l) + ")[" + nm(b) + "," + nm(a) + "] = " +
                     std::to_string(lhs) + " but fusion expansion gives " + std::to_string(rhs);
          }
        }
      }
    record("associativity", fail);
  }
  return out;
}

FusionRing load_ring(const RingDescriptor& desc) {
  FusionRing ring = FusionRing::unchecked(desc);
  for (const auto& r : check_axioms(ring))
    if (!r.passed) throw validation_error(r.axiom, r.detail);
  return ring;
}

}  // namespace qgspec::fusion
