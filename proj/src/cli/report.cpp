#include "qgspec/cli/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "qgspec/core/errors.hpp"

namespace qgspec::cli {

using nlohmann::json;

namespace {

// JSON has no infinity; a missing residual is written as null.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double num_back(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json pairs_json(const std::vector<std::pair<std::string, double>>& v) {
  json out = json::array();
  for (const auto& [k, x] : v) out.push_back({k, num(x)});
  return out;
}

std::vector<std::pair<std::string, double>> pairs_back(const json& j) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& e : j) out.emplace_back(e.at(0).get<std::string>(), num_back(e.at(1)));
  return out;
}

json spectral_json(const SpectralReport& s) {
  json trace = json::array();
  for (auto [n, x] : s.truncation_trace) trace.push_back({n, x});
  return {{"radius_estimate", s.radius_estimate},
          {"radius_lower_bound", s.radius_lower_bound},
          {"top_eigenvalues", s.top_eigenvalues},
          {"iterations", s.iterations},
          {"converged", s.converged},
          {"method", s.method},
          {"truncation_trace", trace},
          {"trace_converged", s.trace_converged ? json(*s.trace_converged) : json(nullptr)}};
}

SpectralReport spectral_back(const json& j) {
  SpectralReport s;
  s.radius_estimate = j.at("radius_estimate").get<double>();
  s.radius_lower_bound = j.at("radius_lower_bound").get<double>();
  s.top_eigenvalues = j.at("top_eigenvalues").get<std::vector<double>>();
  s.iterations = j.at("iterations").get<int>();
  s.converged = j.at("converged").get<bool>();
  s.method = j.at("method").get<std::string>();
  for (const auto& e : j.at("truncation_trace"))
    s.truncation_trace.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<double>());
  if (!j.at("trace_converged").is_null()) s.trace_converged = j.at("trace_converged").get<bool>();
  return s;
}

json certificate_json(const MembershipCertificate& c) {
  return {{"target", c.target},
          {"best_residual", num(c.best_residual)},
          {"witness_id", c.witness_id},
          {"certified", c.certified},
          {"gap_hint", c.gap_hint ? num(*c.gap_hint) : json(nullptr)},
          {"tolerance", c.tolerance},
          {"residuals", pairs_json(c.residuals)}};
}

MembershipCertificate certificate_back(const json& j) {
  MembershipCertificate c;
  c.target = j.at("target").get<double>();
  c.best_residual = num_back(j.at("best_residual"));
  c.witness_id = j.at("witness_id").get<std::string>();
  c.certified = j.at("certified").get<bool>();
  if (!j.at("gap_hint").is_null()) c.gap_hint = j.at("gap_hint").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  c.residuals = pairs_back(j.at("residuals"));
  return c;
}

json verdict_json(const VerdictSummary& v) {
  return {{"target", v.target}, {"certified", v.certified}, {"rule", v.rule}, {"details", pairs_json(v.details)}};
}

VerdictSummary verdict_back(const json& j) {
  return {j.at("target").get<double>(), j.at("certified").get<bool>(), j.at("rule").get<std::string>(),
          pairs_back(j.at("details"))};
}

template <class T, class F>
json opt_json(const std::optional<T>& v, F f) {
  return v ? f(*v) : json(nullptr);
}

}  // namespace

OperatorFingerprint fingerprint(const LinOp& op) {
  return {op.size(), op.nnz(), op.symmetric(), op.symmetry_defect(), op.metadata()};
}

VerdictSummary summarize(const AmenabilityVerdict& v) {
  return {v.target, v.certified, v.rule, v.details};
}

json to_json(const RunReport& r) {
  json out = {
      {"schema", r.schema},
      {"version", r.version},
      {"config", to_json(r.config)},
      {"operator",
       {{"domain_size", r.op.domain_size},
        {"nnz", r.op.nnz},
        {"symmetric", r.op.symmetric},
        {"symmetry_defect", r.op.symmetry_defect},
        {"metadata", r.op.metadata}}},
      {"spectral", spectral_json(r.spectral)},
      {"certificate", opt_json(r.certificate, certificate_json)},
      {"verdict", opt_json(r.verdict, verdict_json)},
      {"secondary_certificate", opt_json(r.secondary_certificate, certificate_json)},
      {"secondary_verdict", opt_json(r.secondary_verdict, verdict_json)},
  };
  if (r.wall_time_s) out["wall_time_s"] = *r.wall_time_s;
  return out;
}

RunReport report_from_json(const json& doc) {
  try {
    RunReport r;
    r.schema = doc.at("schema").get<int>();
    if (r.schema != kReportSchema) throw parse_error("unsupported report schema " + std::to_string(r.schema));
    r.version = doc.at("version").get<std::string>();
    r.config = config_from_json(doc.at("config"));
    const json& op = doc.at("operator");
    r.op.domain_size = op.at("domain_size").get<std::size_t>();
    r.op.nnz = op.at("nnz").get<std::size_t>();
    r.op.symmetric = op.at("symmetric").get<bool>();
    r.op.symmetry_defect = op.at("symmetry_defect").get<double>();
    r.op.metadata = op.at("metadata").get<std::map<std::string, double>>();
    r.spectral = spectral_back(doc.at("spectral"));
    if (!doc.at("certificate").is_null()) r.certificate = certificate_back(doc.at("certificate"));
    if (!doc.at("verdict").is_null()) r.verdict = verdict_back(doc.at("verdict"));
    if (!doc.at("secondary_certificate").is_null())
      r.secondary_certificate = certificate_back(doc.at("secondary_certificate"));
    if (!doc.at("secondary_verdict").is_null()) r.secondary_verdict = verdict_back(doc.at("secondary_verdict"));
    if (doc.contains("wall_time_s")) r.wall_time_s = doc.at("wall_time_s").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed report: ") + e.what());
  }
}

json error_json(const std::string& kind, const std::string& message, const json& extra) {
  json err = {{"kind", kind}, {"message", message}};
  for (const auto& [k, v] : extra.items()) err[k] = v;
  return {{"schema", kReportSchema}, {"error", err}};
}

void write_csv(const RunReport& r, const std::string& prefix) {
  std::ofstream eig(prefix + "_eigenvalues.csv");
  std::ofstream trace(prefix + "_trace.csv");
  if (!eig || !trace) throw input_error("cannot write CSV files with prefix " + prefix);
  eig.precision(17);
  trace.precision(17);
  eig << "index,eigenvalue\n";
  for (std::size_t i = 0; i < r.spectral.top_eigenvalues.size(); ++i)
    eig << i << ',' << r.spectral.top_eigenvalues[i] << '\n';
  trace << "size,radius_estimate\n";
  for (auto [n, x] : r.spectral.truncation_trace) trace << n << ',' << x << '\n';
}

}  // namespace qgspec::cli
