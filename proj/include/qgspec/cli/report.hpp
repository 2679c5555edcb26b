#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qgspec/cli/config.hpp"
#include "qgspec/core/lin_op.hpp"
#include "qgspec/core/spectral.hpp"

namespace qgspec::cli {

inline constexpr int kReportSchema = 1;
inline constexpr const char* kVersion = "0.1.0";

struct OperatorFingerprint {
  std::size_t domain_size = 0;
  std::size_t nnz = 0;
  bool symmetric = false;
  double symmetry_defect = 0.0;
  std::map<std::string, double> metadata;
};

OperatorFingerprint fingerprint(const LinOp& op);

struct VerdictSummary {
  double target = 0.0;
  bool certified = false;
  std::string rule;
  std::vector<std::pair<std::string, double>> details;
};

/// Witness vectors are referenced by id only.
struct RunReport {
  int schema = kReportSchema;
  std::string version = kVersion;
  RunConfig config;
  OperatorFingerprint op;
  SpectralReport spectral;
  std::optional<MembershipCertificate> certificate;
  std::optional<VerdictSummary> verdict;
  std::optional<MembershipCertificate> secondary_certificate;  // bicrossed
  std::optional<VerdictSummary> secondary_verdict;
  std::optional<double> wall_time_s;
};

VerdictSummary summarize(const AmenabilityVerdict& v);

nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& doc);

/// JSON error object; kind is "input", "parse", "validation" or "solver".
nlohmann::json error_json(const std::string& kind, const std::string& message,
                          const nlohmann::json& extra = nlohmann::json::object());

/// <prefix>_eigenvalues.csv (index,eigenvalue) and <prefix>_trace.csv
/// (size,radius_estimate).
void write_csv(const RunReport& r, const std::string& prefix);

}  // namespace qgspec::cli
