#include "tcm/runner.hpp"

#include "tcm/checkpoint.hpp"
#include "tcm/csv.hpp"

#include <fstream>
#include <iostream>

namespace tcm::cli {

namespace fs = std::filesystem;

RunArtifacts run_simulation(const RunConfig& cfg, bool emit_plot_data) {
    cfg.validate();

    RunArtifacts art;
    art.config = cfg;

    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir);

    art.manifest_path = out_dir / "manifest.cfg";
    {
        std::ofstream manifest(art.manifest_path, std::ios::trunc);
        if (!manifest)
            throw std::runtime_error("cannot write manifest in '" + cfg.out_dir + "'");
        manifest << emit_run_config(cfg);
    }

    GridPtr grid = cfg.make_run_grid();
    State state0 = initial_condition(grid, cfg.ic_spec());

    art.csv_path = out_dir / "diagnostics.csv";
    std::ofstream csv(art.csv_path, std::ios::trunc);
    if (!csv)
        throw std::runtime_error("cannot write diagnostics in '" + cfg.out_dir + "'");
    csv << diagnostics_header();

    std::size_t emitted = 0;
    auto callback = [&](const State& snapshot, const diag::DiagnosticsRecord& r) {
        csv << diagnostics_row(r);
        csv.flush();
        ++emitted;
        if (cfg.checkpoint_every > 0 && r.time > 0.0 &&
            (emitted - 1) % static_cast<std::size_t>(cfg.checkpoint_every) == 0) {
            const fs::path chk =
                out_dir / ("checkpoint_" + std::to_string(emitted - 1) + ".tcmchk");
            save_checkpoint(snapshot, cfg.model.alpha, cfg.model.beta,
                            chk.string());
        }
    };

    art.result = integrate(state0, cfg.model, cfg.step, callback);

    if (!art.result.blew_up && cfg.checkpoint_every > 0)
        save_checkpoint(art.result.final_state, cfg.model.alpha, cfg.model.beta,
                        (out_dir / "final.tcmchk").string());

    if (emit_plot_data) {
        const fs::path plot_dir = out_dir / "plot";
        fs::create_directories(plot_dir);
        const auto& cols = diagnostics_columns();

        // split each serialized row once so plot values match the CSV exactly
        std::vector<std::vector<std::string>> fields;
        for (const auto& r : art.result.records) {
            const std::string row = diagnostics_row(r);
            std::vector<std::string> parts;
            std::size_t begin = 0;
            for (std::size_t i = 0; i <= row.size(); ++i)
                if (i == row.size() || row[i] == ',' || row[i] == '\n') {
                    if (i > begin)
                        parts.push_back(row.substr(begin, i - begin));
                    begin = i + 1;
                }
            fields.push_back(std::move(parts));
        }
        for (std::size_t c = 1; c < cols.size(); ++c) {
            std::ofstream pf(plot_dir / (cols[c] + ".dat"), std::ios::trunc);
            for (const auto& parts : fields)
                pf << parts[0] << ' ' << parts[c] << '\n';
        }
    }

    art.exit_code = art.result.blew_up ? kExitBlowup : kExitOk;
    return art;
}

int cmd_run(const std::string& config_path, bool emit_plot_data) {
    RunConfig cfg;
    try {
        cfg = load_run_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error in " << config_path << ": " << e.what()
                  << "\n";
        return kExitConfigError;
    }
    try {
        RunArtifacts art = run_simulation(cfg, emit_plot_data);
        if (art.result.blew_up)
            std::cerr << "blow-up detected at t = "
                      << format_double(art.result.blowup_time)
                      << "; diagnostics truncated\n";
        else
            std::cout << "run complete: t = "
                      << format_double(art.result.final_state.time) << ", "
                      << art.result.steps_taken << " steps, records in "
                      << art.csv_path.string() << "\n";
        return art.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return 1;
    }
}

} // namespace tcm::cli
