#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qgspec/cli/config.hpp"
#include "qgspec/cli/report.hpp"

namespace qgspec::cli {

/// Dispatches to the example module. Throws input_error, parse_error,
/// validation_error, sweep_error, or solver_error when the headline spectral
/// radius did not converge.
RunReport run(const RunConfig& config);

struct AxiomLine {
  std::string axiom;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::string subject;
  std::vector<AxiomLine> checks;
  bool valid() const;
};

/// Every ring axiom on a descriptor file, without building operators.
ValidationReport validate_descriptor(const std::string& path);
/// Action and ball-growth checks for a group spec.
ValidationReport validate_group(const std::string& spec);

nlohmann::json to_json(const ValidationReport& r);

}  // namespace qgspec::cli
