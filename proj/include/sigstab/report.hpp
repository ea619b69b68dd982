#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sigstab/matrix.hpp"
#include "sigstab/stability.hpp"

namespace sigstab {

inline constexpr const char* kSchemaVersion = "1";

/// Exit codes of the analyze command.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitFinding = 2 };

/// Report document. Non-finite numbers become null with a matching warning.
nlohmann::json report_to_json(const StabilityReport& rep, const Matrix& m, const std::string& input_path);

/// Short human summary: sigma*, crossing class, verdicts.
std::string report_to_text(const StabilityReport& rep, const std::string& input_path);

/// 2 when a check produced a negative verdict, 1 on convergence errors, else 0.
int exit_code_for(const StabilityReport& rep);

/// Header sigma,abscissa,p_0..p_{n-1},sign_0..sign_{n-1}; 17 significant digits.
std::string sweep_to_csv(const std::vector<SweepRow>& rows, std::size_t n);

}  // namespace sigstab
