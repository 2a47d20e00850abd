#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "samplab/diagnostics.hpp"
#include "samplab/operator_lab.hpp"
#include "samplab/representation.hpp"

namespace samplab {

// operator_lab report: f_id, qf_M, qf_U, qf_H, qf_S, margin_MU, margin_UH, margin_US
std::string ordering_csv(const LabReport& report);
nlohmann::json lab_summary_json(const LabReport& report,
                                const ConsequenceReport& consequences,
                                const GridSpec& grid, int w);

// {pair, grid, check, per_fiber_residuals, verdict} per check.
nlohmann::json representation_checks_json(const std::string& pair,
                                          const GridSpec& grid,
                                          const std::vector<CheckReport>& checks);

// Same column prefix as the lab CSV plus one stderr_* column per estimate.
std::string compare_csv(const CompareReport& report);
nlohmann::json compare_summary_json(const CompareReport& report);

}  // namespace samplab
