#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tcm/runner.hpp"

namespace tcm::cli {

/// Parameter sweep over (alpha, beta) pairs: each cell runs the template
/// config in its own output directory, cells execute in a worker pool.
struct SweepSpec {
    std::vector<double> alphas;
    std::vector<double> betas;
    int workers = 1;
    RunConfig base;

    void validate() const;
};

SweepSpec parse_sweep_text(const std::string& text);
SweepSpec load_sweep_spec(const std::string& path);

struct SweepCell {
    double alpha = 0.0;
    double beta = 0.0;
    std::string verdict; // bounded | unbounded | blowup | failed
    double max_grad_u = 0.0; // max over run of ||grad u||
    double final_e = 0.0;
    double blowup_time = -1.0;
    int exit_code = 0;
    std::string dir;
    std::string error;
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::filesystem::path summary_path;
    int exit_code = 0;
};

SweepResult run_sweep(const SweepSpec& spec);
int cmd_sweep(const std::string& spec_path);

} // namespace tcm::cli
