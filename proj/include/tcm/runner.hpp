#pragma once

#include <filesystem>
#include <string>

#include "tcm/run_config.hpp"

namespace tcm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitBlowup = 3;
inline constexpr int kExitVerifyFailure = 4;

struct RunArtifacts {
    int exit_code = kExitOk;
    RunConfig config;
    IntegrateResult result;
    std::filesystem::path csv_path;
    std::filesystem::path manifest_path;
};

/// Executes one configured run: writes the resolved-config manifest, streams
/// diagnostics rows to CSV as they are produced, saves checkpoints at the
/// configured cadence, and optionally dumps per-quantity plot files.
RunArtifacts run_simulation(const RunConfig& cfg, bool emit_plot_data = false);

/// CLI front end: loads the config file and runs; config problems exit with
/// kExitConfigError, blow-up with kExitBlowup.
int cmd_run(const std::string& config_path, bool emit_plot_data);

} // namespace tcm::cli
