#include "tcm/sweep.hpp"

#include "tcm/csv.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace tcm::cli {

namespace fs = std::filesystem;

namespace {

std::vector<double> parse_double_list(const std::string& value, int line) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(value);
    while (std::getline(is, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos)
            throw ConfigError(line, "empty entry in list");
        const auto e = item.find_last_not_of(" \t");
        const std::string tok = item.substr(b, e - b + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError(line, "expected a number, got '" + tok + "'");
        }
    }
    if (out.empty())
        throw ConfigError(line, "empty list");
    return out;
}

} // namespace

void SweepSpec::validate() const {
    if (alphas.empty() || betas.empty())
        throw ConfigError(0, "sweep.alphas and sweep.betas must be nonempty");
    if (workers < 1)
        throw ConfigError(0, "sweep.workers must be >= 1");
    base.validate();
}

SweepSpec parse_sweep_text(const std::string& text) {
    ParsedFile file = parse_key_value_text(text);
    SweepSpec spec;
    apply_run_keys(file, spec.base,
                   {"sweep.alphas", "sweep.betas", "sweep.workers"});
    if (file.has("sweep.alphas")) {
        const auto& [v, line] = file.entries.at("sweep.alphas");
        spec.alphas = parse_double_list(v, line);
    }
    if (file.has("sweep.betas")) {
        const auto& [v, line] = file.entries.at("sweep.betas");
        spec.betas = parse_double_list(v, line);
    }
    if (file.has("sweep.workers")) {
        const auto& [v, line] = file.entries.at("sweep.workers");
        try {
            spec.workers = std::stoi(v);
        } catch (const std::exception&) {
            throw ConfigError(line, "expected an integer, got '" + v + "'");
        }
    }
    spec.validate();
    return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ConfigError(0, "cannot open sweep spec '" + path + "'");
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_sweep_text(buf.str());
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();

    struct CellJob {
        double alpha, beta;
    };
    std::vector<CellJob> jobs;
    for (double a : spec.alphas)
        for (double b : spec.betas)
            jobs.push_back({a, b});

    SweepResult result;
    result.cells.resize(jobs.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size())
                return;
            const CellJob& job = jobs[i];
            SweepCell cell;
            cell.alpha = job.alpha;
            cell.beta = job.beta;

            RunConfig cfg = spec.base;
            cfg.model.alpha = job.alpha;
            cfg.model.beta = job.beta;
            cfg.out_dir = (fs::path(spec.base.out_dir) /
                           ("a" + format_double(job.alpha) + "_b" +
                            format_double(job.beta)))
                              .string();
            cell.dir = cfg.out_dir;
            try {
                RunArtifacts art = run_simulation(cfg);
                cell.exit_code = art.exit_code;
                if (art.result.blew_up) {
                    cell.verdict = "blowup";
                    cell.blowup_time = art.result.blowup_time;
                } else {
                    diag::BoundReport rep =
                        diag::bound_monitor(art.result.records, cfg.model);
                    cell.verdict = rep.verdict;
                }
                for (const auto& r : art.result.records)
                    cell.max_grad_u =
                        std::max(cell.max_grad_u, std::sqrt(r.grad_u));
                if (!art.result.records.empty())
                    cell.final_e = art.result.records.back().e;
            } catch (const std::exception& e) {
                cell.verdict = "failed";
                cell.exit_code = 1;
                cell.error = e.what();
            }
            result.cells[i] = cell;
        }
    };

    const int nworkers =
        std::min<std::size_t>(spec.workers, jobs.size());
    std::vector<std::thread> pool;
    for (int w = 0; w < nworkers; ++w)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    fs::create_directories(spec.base.out_dir);
    result.summary_path = fs::path(spec.base.out_dir) / "sweep_summary.csv";
    std::ofstream os(result.summary_path, std::ios::trunc);
    os << "alpha,beta,verdict,max_grad_u,final_E,blowup_time,exit_code\n";
    for (const SweepCell& c : result.cells) {
        os << format_double(c.alpha) << ',' << format_double(c.beta) << ','
           << c.verdict << ',' << format_double(c.max_grad_u) << ','
           << format_double(c.final_e) << ',' << format_double(c.blowup_time)
           << ',' << c.exit_code << '\n';
        if (c.exit_code != 0 && c.verdict == "failed")
            result.exit_code = 1;
    }
    return result;
}

int cmd_sweep(const std::string& spec_path) {
    SweepSpec spec;
    try {
        spec = load_sweep_spec(spec_path);
    } catch (const ConfigError& e) {
        std::cerr << "sweep spec error in " << spec_path << ": " << e.what()
                  << "\n";
        return kExitConfigError;
    }
    try {
        SweepResult r = run_sweep(spec);
        std::cout << "sweep complete: " << r.cells.size() << " cells, summary in "
                  << r.summary_path.string() << "\n";
        for (const SweepCell& c : r.cells)
            std::cout << "  alpha=" << format_double(c.alpha)
                      << " beta=" << format_double(c.beta) << " -> " << c.verdict
                      << "\n";
        return r.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "sweep failed: " << e.what() << "\n";
        return 1;
    }
}

} // namespace tcm::cli
