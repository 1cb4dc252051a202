// Command-line front end: simulation runs, verification suites, inequality
// benches, and (alpha, beta) parameter sweeps for the 3D tropical climate
// model solver.

#include "CLI11.hpp"

#include "tcm/bench.hpp"
#include "tcm/csv.hpp"
#include "tcm/runner.hpp"
#include "tcm/sweep.hpp"
#include "tcm/verify.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;

namespace {

int cmd_bench(const std::string& id, int samples, int n, int max_mode,
              std::uint64_t seed, double alpha, const std::string& out_dir) {
    tcm::bench::EnsembleConfig cfg;
    cfg.n1 = cfg.n2 = cfg.n3 = n;
    cfg.samples = samples;
    cfg.max_mode = max_mode;
    cfg.base_seed = seed;

    tcm::bench::BenchReport rep;
    try {
        rep = tcm::bench::run_bench(id, cfg, alpha);
    } catch (const std::invalid_argument& e) {
        std::cerr << "bench error: " << e.what() << "\n";
        return tcm::cli::kExitConfigError;
    }

    fs::create_directories(out_dir);
    const fs::path csv_path = fs::path(out_dir) / ("bench_" + rep.id + ".csv");
    {
        std::ofstream os(csv_path, std::ios::trunc);
        os << "index,seed,ratio,degenerate\n";
        for (const auto& row : rep.rows)
            os << row.index << ',' << row.seed << ','
               << tcm::cli::format_double(row.ratio) << ','
               << (row.degenerate ? 1 : 0) << '\n';
    }
    const fs::path summary_path =
        fs::path(out_dir) / ("bench_" + rep.id + "_summary.txt");
    {
        std::ofstream os(summary_path, std::ios::trunc);
        os << "inequality: " << rep.id << "\n";
        os << "statement:  " << rep.statement << "\n";
        os << "grid:       " << rep.n1 << " x " << rep.n2 << " x " << rep.n3
           << ", box " << tcm::cli::format_double(rep.l1) << " x "
           << tcm::cli::format_double(rep.l2) << " x "
           << tcm::cli::format_double(rep.l3) << "\n";
        os << "samples:    " << rep.requested << " (" << rep.evaluated
           << " evaluated, " << rep.degenerate_skipped << " degenerate)\n";
        os << "max ratio:  " << tcm::cli::format_double(rep.max_ratio)
           << " at sample " << rep.argmax_index << " (seed " << rep.argmax_seed
           << ")\n";
    }
    std::cout << "bench " << rep.id << ": max ratio "
              << tcm::cli::format_double(rep.max_ratio) << " over "
              << rep.evaluated << " samples (" << rep.degenerate_skipped
              << " degenerate); report in " << csv_path.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral solver and diagnostics for the 3D tropical "
                 "climate model with damping"};
    app.require_subcommand(1);

    std::string config_path;
    bool emit_plot = false;
    auto* run = app.add_subcommand("run", "integrate a configured simulation");
    run->add_option("config", config_path, "run configuration file")->required();
    run->add_flag("--emit-plot-data", emit_plot,
                  "write per-quantity two-column plot files");

    std::string level = "fast";
    bool tamper = false;
    auto* verify =
        app.add_subcommand("verify", "run the acceptance verification suites");
    verify->add_option("--level", level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));
    verify->add_flag("--tamper", tamper,
                     "fault-injection hook: corrupt one tolerance")
        ->group(""); // hidden test hook

    std::string sweep_path;
    auto* sweep =
        app.add_subcommand("sweep", "run an (alpha, beta) parameter sweep");
    sweep->add_option("spec", sweep_path, "sweep specification file")->required();

    std::string bench_id;
    int bench_samples = 1000;
    int bench_n = 32;
    int bench_max_mode = 5;
    std::uint64_t bench_seed = 1;
    double bench_alpha = 1.5;
    std::string bench_out = "bench_out";
    auto* bench = app.add_subcommand("bench", "empirical inequality benches");
    bench->add_option("id", bench_id, "horizontal-l4 | vertical-sup | fractional-interp")
        ->required();
    bench->add_option("--samples", bench_samples, "ensemble size");
    bench->add_option("--grid", bench_n, "points per axis");
    bench->add_option("--max-mode", bench_max_mode, "band limit of samples");
    bench->add_option("--seed", bench_seed, "base seed");
    bench->add_option("--alpha", bench_alpha,
                      "exponent for fractional-interp (in [5/4, 5/2))");
    bench->add_option("--out", bench_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return tcm::cli::cmd_run(config_path, emit_plot);
    if (verify->parsed())
        return tcm::cli::cmd_verify(tcm::cli::parse_verify_level(level), tamper);
    if (sweep->parsed())
        return tcm::cli::cmd_sweep(sweep_path);
    if (bench->parsed())
        return cmd_bench(bench_id, bench_samples, bench_n, bench_max_mode,
                         bench_seed, bench_alpha, bench_out);
    return 0;
}
