#include "qgspec/fusion/descriptor.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "qgspec/core/errors.hpp"

namespace qgspec::fusion {
namespace {

using nlohmann::json;

void reject_unknown(const json& doc, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : doc.items())
    if (!allowed.count(key)) throw parse_error("unknown field '" + key + "'");
}

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw parse_error(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<std::string> string_list(const json& doc, const char* key) {
  const json& arr = field(doc, key);
  if (!arr.is_array()) throw parse_error(std::string("'") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw parse_error(std::string("'") + key + "' entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

TableDescriptor parse_table(const json& doc) {
  reject_unknown(doc, {"kind", "labels", "dims", "conj", "fusion"});
  TableDescriptor t;
  t.labels = string_list(doc, "labels");
  t.conj = string_list(doc, "conj");
  const json& dims = field(doc, "dims");
  if (!dims.is_array()) throw parse_error("'dims' must be an array");
  for (const auto& d : dims) {
    if (!d.is_number()) throw parse_error("'dims' entries must be numbers");
    t.dims.push_back(static_cast<Dimension>(d.get<double>()));
  }
  const json& fusion = field(doc, "fusion");
  if (!fusion.is_array()) throw parse_error("'fusion' must be an array");
  for (const auto& e : fusion) {
    if (!e.is_array() || e.size() != 4 || !e[0].is_string() || !e[1].is_string() ||
        !e[2].is_string() || !e[3].is_number_integer())
      throw parse_error("fusion entries must be [kappa, alpha, beta, multiplicity]");
    const auto mult = e[3].get<long long>();
    if (mult < 0) throw parse_error("negative fusion multiplicity");
    t.fusion.push_back({e[0].get<std::string>(), e[1].get<std::string>(), e[2].get<std::string>(),
                        static_cast<unsigned>(mult)});
  }
  return t;
}

RuleDescriptor parse_rule(const json& doc) {
  reject_unknown(doc, {"kind", "rule", "N", "level"});
  RuleDescriptor r;
  const json& rule = field(doc, "rule");
  const json& n = field(doc, "N");
  const json& level = field(doc, "level");
  if (!rule.is_string()) throw parse_error("'rule' must be a string");
  if (!n.is_number()) throw parse_error("'N' must be a number");
  if (!level.is_number_integer()) throw parse_error("'level' must be an integer");
  r.rule = rule.get<std::string>();
  r.n = n.get<double>();
  const auto lv = level.get<long long>();
  if (lv < 1 || lv > 1'000'000) throw parse_error("'level' out of range");
  r.level = static_cast<int>(lv);
  if (r.rule != "free-su2") throw parse_error("unknown fusion rule '" + r.rule + "'");
  if (!(r.n > 0) || !std::isfinite(r.n)) throw parse_error("'N' must be positive");
  return r;
}

}  // namespace

RingDescriptor parse_descriptor(const json& doc) {
  if (!doc.is_object()) throw parse_error("ring descriptor must be an object");
  const json& kind = field(doc, "kind");
  if (!kind.is_string()) throw parse_error("'kind' must be a string");
  const auto k = kind.get<std::string>();
  if (k == "table") return parse_table(doc);
  if (k == "rule") return parse_rule(doc);
  throw parse_error("unknown kind '" + k + "'");
}

RingDescriptor parse_descriptor_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error(path.string() + ": " + e.what());
  }
  return parse_descriptor(doc);
}

json to_json(const RingDescriptor& desc) {
  if (const auto* r = std::get_if<RuleDescriptor>(&desc))
    return {{"kind", "rule"}, {"rule", r->rule}, {"N", r->n}, {"level", r->level}};
  const auto& t = std::get<TableDescriptor>(desc);
  json fusion = json::array();
  for (const auto& e : t.fusion) fusion.push_back({e.kappa, e.alpha, e.beta, e.multiplicity});
  json dims = json::array();
  for (auto d : t.dims) dims.push_back(static_cast<double>(d));
  return {{"kind", "table"}, {"labels", t.labels}, {"dims", dims}, {"conj", t.conj}, {"fusion", fusion}};
}

}  // namespace qgspec::fusion
