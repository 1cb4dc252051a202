#include "tcm/verify.hpp"

#include "tcm/bench.hpp"
#include "tcm/checkpoint.hpp"
#include "tcm/csv.hpp"
#include "tcm/fft.hpp"
#include "tcm/multipliers.hpp"
#include "tcm/norms.hpp"
#include "tcm/operators.hpp"
#include "tcm/probe.hpp"
#include "tcm/random_fields.hpp"
#include "tcm/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tcm::cli {

namespace fs = std::filesystem;

VerifyLevel parse_verify_level(const std::string& name) {
    if (name == "fast")
        return VerifyLevel::fast;
    if (name == "full")
        return VerifyLevel::full;
    throw std::invalid_argument("unknown verify level '" + name + "'");
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct Setup {
    int n = 32;
    double t_end = 1.0;
    double dt = 1e-3;
    int cancellation_states = 100;
    int damping_pairs = 1000;
    double probe_t_end = 0.5;
    double probe_dt = 1e-3;
    int bench_samples = 1000;
    int bench_n = 32;
    double convergence_dt = 4e-3;
    double convergence_t_end = 0.1;
};

Setup make_setup(VerifyLevel level) {
    Setup s;
    if (level == VerifyLevel::fast) {
        s.n = 16;
        s.t_end = 0.25;
        s.dt = 1e-3;
        s.cancellation_states = 20;
        s.damping_pairs = 200;
        s.probe_t_end = 0.1;
        s.probe_dt = 2e-3;
        s.bench_samples = 100;
        s.bench_n = 16;
    }
    return s;
}

State taylor_green_unit(const GridPtr& grid) {
    IcSpec spec;
    spec.kind = IcKind::taylor_green;
    spec.amplitude = 1.0;
    return initial_condition(grid, spec);
}

double state_diff_norm(const State& a, const State& b) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        Field du = a.u[c];
        du -= b.u[c];
        Field dv = a.v[c];
        dv -= b.v[c];
        sum += std::pow(l2_norm(du), 2) + std::pow(l2_norm(dv), 2);
    }
    Field dt = a.theta;
    dt -= b.theta;
    return std::sqrt(sum + std::pow(l2_norm(dt), 2));
}

struct EnergyRunData {
    IntegrateResult coarse;
    double residual_ratio = 0.0;
    double residual_ratio_half = 0.0;
    double improvement = 0.0;
    double max_rel_div = 0.0;
    double runtime_sec = 0.0;
};

EnergyRunData energy_identity_run(const Setup& s) {
    GridPtr grid = make_grid(s.n, s.n, s.n);
    State s0 = taylor_green_unit(grid);
    ModelParams params; // alpha = 3/2, beta = 4

    StepperConfig cfg;
    cfg.dt = s.dt;
    cfg.t_end = s.t_end;
    cfg.callback_every = 1;

    EnergyRunData data;
    const auto t0 = std::chrono::steady_clock::now();
    data.coarse = integrate(s0, params, cfg, [&](const State& st,
                                                 const diag::DiagnosticsRecord&) {
        data.max_rel_div = std::max(data.max_rel_div, relative_divergence(st.u));
    });
    data.runtime_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    const double e0 = data.coarse.records.front().e;
    data.residual_ratio = data.coarse.records.back().energy_residual / e0;

    StepperConfig half = cfg;
    half.dt = 0.5 * s.dt;
    half.callback_every = 2;
    IntegrateResult fine = integrate(s0, params, half);
    data.residual_ratio_half = fine.records.back().energy_residual / e0;
    data.improvement = data.residual_ratio / data.residual_ratio_half;
    return data;
}

State random_band_state(const GridPtr& grid, double amplitude,
                        std::uint64_t seed) {
    IcSpec spec;
    spec.kind = IcKind::random_band;
    spec.amplitude = amplitude;
    spec.seed = seed;
    return initial_condition(grid, spec);
}

} // namespace

std::vector<CriterionResult> run_verification(VerifyLevel level, bool tamper) {
    const Setup setup = make_setup(level);
    std::vector<CriterionResult> results;
    auto add = [&](const std::string& id, const std::string& name, bool pass,
                   const std::string& detail) {
        results.push_back({id, name, pass, detail});
    };

    // ---- 1. energy identity ------------------------------------------------
    EnergyRunData energy = energy_identity_run(setup);
    {
        const bool pass = energy.residual_ratio <= 1e-5 &&
                          energy.improvement >= 4.0 * 0.85 &&
                          energy.runtime_sec <= 300.0;
        std::ostringstream d;
        d << "r(T)/E0 = " << fmt(energy.residual_ratio) << " (tol 1e-05), dt/2 x"
          << fmt(energy.improvement) << " (need >= 3.4), runtime "
          << fmt(energy.runtime_sec) << " s";
        add("1", "energy-identity", pass, d.str());
    }

    // ---- 2. cancellation suite ---------------------------------------------
    {
        const double tol = tamper ? 0.0 : 1e-11;
        GridPtr grid = make_grid(setup.n, setup.n, setup.n);
        double worst = 0.0;
        for (int i = 0; i < setup.cancellation_states; ++i) {
            State st = random_band_state(grid, 0.5 + 0.01 * i,
                                         1000 + static_cast<std::uint64_t>(i));
            worst = std::max(worst, diag::cancellation_suite(st).max_abs());
        }
        // control: divergence correlated with |u|^2 must trip the suite
        State broken = random_band_state(grid, 1.0, 77);
        VectorField bad(grid, Rep::physical);
        const Grid& g = *grid;
        for (int i3 = 0; i3 < g.n3(); ++i3)
            for (int i2 = 0; i2 < g.n2(); ++i2)
                for (int i1 = 0; i1 < g.n1(); ++i1) {
                    const double x1 = g.x(0, i1);
                    bad[0].phys()[g.idx(i1, i2, i3)] = std::sin(x1);
                    bad[1].phys()[g.idx(i1, i2, i3)] =
                        std::cos(x1) + std::cos(2.0 * x1);
                }
        broken.u = to_spectral(bad);
        const double control = diag::cancellation_suite(broken).a;

        const bool pass = worst <= tol && control > 1e-3;
        std::ostringstream d;
        d << "max residual " << fmt(worst) << " over "
          << setup.cancellation_states << " states (tol " << fmt(tol)
          << (tamper ? ", tampered" : "") << "), broken control "
          << fmt(control) << " (> 1e-03)";
        add("2", "cancellation-suite", pass, d.str());
    }

    // ---- 3. damping monotonicity -------------------------------------------
    {
        GridPtr grid = make_grid(16, 16, 16);
        bool all_ok = true;
        double most_negative = 0.0;
        for (int i = 0; i < setup.damping_pairs; ++i) {
            const double beta = i % 2 == 0 ? 4.0 : 5.0;
            VectorField a =
                random_vector_field(grid, 4, 50000 + static_cast<std::uint64_t>(i));
            VectorField b =
                random_vector_field(grid, 4, 90000 + static_cast<std::uint64_t>(i));
            const double value = diag::monotone_damping_check(a, b, beta);
            const double scale = std::pow(l2_norm(a) + l2_norm(b), beta + 1.0);
            const double normalized = value / scale;
            most_negative = std::min(most_negative, normalized);
            if (value < -1e-12 * scale)
                all_ok = false;
        }
        std::ostringstream d;
        d << setup.damping_pairs << " pairs, most negative normalized value "
          << fmt(most_negative) << " (floor -1e-12)";
        add("3", "damping-monotonicity", all_ok, d.str());
    }

    // ---- 4. operator exactness ---------------------------------------------
    {
        GridPtr grid = make_grid(16, 16, 16);
        Field f = random_scalar_field(grid, 5, 321);
        bool exact = true;
        for (double alpha : {1.25, 1.5, 2.0}) {
            Field out = apply_multiplier(f, MultiplierSpec::fractional_laplacian(alpha));
            const Grid& g = *grid;
            std::size_t idx = 0;
            for (int i3 = 0; i3 < g.n3() && exact; ++i3)
                for (int i2 = 0; i2 < g.n2() && exact; ++i2)
                    for (int i1 = 0; i1 < g.n1(); ++i1, ++idx) {
                        const double ksq = g.k(0, i1) * g.k(0, i1) +
                                           g.k(1, i2) * g.k(1, i2) +
                                           g.k(2, i3) * g.k(2, i3);
                        const std::complex<double> expect =
                            ksq == 0.0
                                ? std::complex<double>(0.0, 0.0)
                                : f.spec()[idx] * std::pow(ksq, alpha);
                        if (out.spec()[idx] != expect) {
                            exact = false;
                            break;
                        }
                    }
            idx = 0;
        }

        // single-mode linear evolution against the closed-form exponential
        ModelParams lin;
        lin.advection = false;
        lin.coupling = false;
        lin.damping = false;
        StepperConfig cfg;
        cfg.dt = 2e-3;
        double worst_step_err = 0.0;
        {
            State s;
            s.u = VectorField(grid, Rep::spectral);
            s.v = VectorField(grid, Rep::spectral);
            s.theta = Field(grid, Rep::spectral);
            s.u[1].spec()[grid->idx(1, 0, 0)] = {0.0, -0.5};
            s.u[1].spec()[grid->idx(15, 0, 0)] = {0.0, 0.5};
            s.v[0].spec()[grid->idx(0, 2, 0)] = {0.25, 0.1};
            s.v[0].spec()[grid->idx(0, 14, 0)] = {0.25, -0.1};
            s.theta.spec()[grid->idx(0, 0, 3)] = {0.0, -0.5};
            s.theta.spec()[grid->idx(0, 0, 13)] = {0.0, 0.5};
            Integrator engine(grid, lin);
            State cur = s;
            for (int n = 0; n < 100; ++n) {
                State nxt = engine.advance(cur, cfg.dt, Scheme::if_rk3);
                auto ratio_err = [&](const std::complex<double>& now,
                                     const std::complex<double>& prev,
                                     double symbol) {
                    return std::abs(now / prev - std::exp(-symbol * cfg.dt));
                };
                worst_step_err = std::max(
                    worst_step_err,
                    ratio_err(nxt.u[1].spec()[grid->idx(1, 0, 0)],
                              cur.u[1].spec()[grid->idx(1, 0, 0)], 1.0));
                worst_step_err = std::max(
                    worst_step_err,
                    ratio_err(nxt.v[0].spec()[grid->idx(0, 2, 0)],
                              cur.v[0].spec()[grid->idx(0, 2, 0)],
                              std::pow(4.0, 1.5)));
                worst_step_err = std::max(
                    worst_step_err,
                    ratio_err(nxt.theta.spec()[grid->idx(0, 0, 3)],
                              cur.theta.spec()[grid->idx(0, 0, 3)], 9.0));
                cur = nxt;
            }
        }
        const bool pass = exact && worst_step_err <= 1e-13;
        std::ostringstream d;
        d << "multiplier exact per mode: " << (exact ? "yes" : "NO")
          << ", worst per-step exponential error " << fmt(worst_step_err)
          << " (tol 1e-13)";
        add("4", "operator-exactness", pass, d.str());
    }

    // ---- 5. leray projection ------------------------------------------------
    {
        GridPtr grid = make_grid(setup.n, setup.n, setup.n);
        double worst_idem = 0.0, worst_grad = 0.0;
        for (int i = 0; i < 5; ++i) {
            VectorField w =
                random_vector_field(grid, 5, 4200 + static_cast<std::uint64_t>(i));
            VectorField p = leray_project(w);
            VectorField pp = leray_project(p);
            VectorField diff = pp;
            diff -= p;
            worst_idem =
                std::max(worst_idem, l2_norm(diff) / std::max(1e-300, l2_norm(p)));

            Field phi = random_scalar_field(grid, 5, 9900 + static_cast<std::uint64_t>(i));
            VectorField grad = gradient(phi);
            worst_grad = std::max(worst_grad, l2_norm(leray_project(grad)) /
                                                  std::max(1e-300, l2_norm(grad)));
        }
        const bool pass = worst_idem <= 1e-13 && worst_grad <= 1e-13 &&
                          energy.max_rel_div <= 1e-10;
        std::ostringstream d;
        d << "idempotence " << fmt(worst_idem) << ", gradient annihilation "
          << fmt(worst_grad) << " (tol 1e-13), max div/||u|| over run "
          << fmt(energy.max_rel_div) << " (tol 1e-10)";
        add("5", "leray-projection", pass, d.str());
    }

    // ---- 6. boundedness monitors ---------------------------------------------
    {
        ModelParams params;
        diag::BoundReport rep =
            diag::bound_monitor(energy.coarse.records, params, 10.0);
        const bool pass = rep.verdict == "bounded" && rep.energy_nonincreasing;
        std::ostringstream d;
        d << "verdict " << rep.verdict << ", energy nonincreasing "
          << (rep.energy_nonincreasing ? "yes" : "NO") << ", "
          << rep.quantities.size() << " norms within 10x initial";
        add("6", "bound-monitors", pass, d.str());
    }

    // ---- 7. twin-run probe ----------------------------------------------------
    {
        GridPtr grid = make_grid(setup.n, setup.n, setup.n);
        State s0 = taylor_green_unit(grid);
        ModelParams params;
        StepperConfig cfg;
        cfg.dt = setup.probe_dt;
        cfg.t_end = setup.probe_t_end;
        cfg.callback_every = 25;

        const double eps = 1e-3;
        diag::ProbeResult a = diag::twin_run_probe(s0, eps, params, cfg);
        diag::ProbeResult b = diag::twin_run_probe(s0, eps / 2.0, params, cfg);
        const double delta0_err = std::abs(a.delta0 - eps * eps) / (eps * eps);
        double worst_mismatch = 0.0;
        for (std::size_t i = 0; i < a.times.size(); ++i) {
            const double ra = a.delta_over_eps2[i];
            const double rb = b.delta_over_eps2[i];
            worst_mismatch =
                std::max(worst_mismatch, std::abs(ra - rb) / std::max(ra, rb));
        }
        const bool pass = delta0_err <= 1e-10 && worst_mismatch <= 0.10 &&
                          !a.blew_up && !b.blew_up;
        std::ostringstream d;
        d << "delta(0) error " << fmt(delta0_err)
          << " (tol 1e-10), eps vs eps/2 curve mismatch " << fmt(worst_mismatch)
          << " (tol 0.1)";
        add("7", "twin-run-probe", pass, d.str());
    }

    // ---- 8. inequality bench ---------------------------------------------------
    {
        bench::EnsembleConfig cfg;
        cfg.n1 = cfg.n2 = cfg.n3 = setup.bench_n;
        cfg.max_mode = 5;
        cfg.samples = setup.bench_samples;
        cfg.base_seed = 11;

        bench::BenchReport h1 = bench::bench_horizontal_l4(cfg);
        bench::BenchReport h2 = bench::bench_horizontal_l4(cfg);
        bench::BenchReport v1 = bench::bench_vertical_sup(cfg);
        bench::BenchReport v2 = bench::bench_vertical_sup(cfg);
        const bool reproducible =
            h1.max_ratio == h2.max_ratio && v1.max_ratio == v2.max_ratio &&
            h1.argmax_seed == h2.argmax_seed;
        const bool finite = std::isfinite(h1.max_ratio) && h1.max_ratio > 0.0 &&
                            std::isfinite(v1.max_ratio) && v1.max_ratio > 0.0;

        GridPtr grid = make_grid(cfg.n1, cfg.n2, cfg.n3);
        double worst_scale = 0.0;
        for (int i = 0; i < 25; ++i) {
            Field psi = to_physical(
                random_scalar_field(grid, 5, 600 + static_cast<std::uint64_t>(i)));
            for (double lambda : {2.5e3, -7.0, 1e-4}) {
                Field scaled = psi;
                scaled *= lambda;
                const double r0 = bench::evaluate_horizontal_l4(psi).ratio;
                const double r1 = bench::evaluate_horizontal_l4(scaled).ratio;
                worst_scale = std::max(worst_scale, std::abs(r1 - r0) / r0);
                const double v0 = bench::evaluate_vertical_sup(psi).ratio;
                const double vr = bench::evaluate_vertical_sup(scaled).ratio;
                worst_scale = std::max(worst_scale, std::abs(vr - v0) / v0);
            }
        }
        const bool pass = reproducible && finite && worst_scale <= 1e-12;
        std::ostringstream d;
        d << "max ratios " << fmt(h1.max_ratio) << " / " << fmt(v1.max_ratio)
          << " over " << setup.bench_samples
          << " samples, reproducible: " << (reproducible ? "yes" : "NO")
          << ", scale-invariance error " << fmt(worst_scale) << " (tol 1e-12)";
        add("8", "inequality-bench", pass, d.str());
    }

    // ---- 9. self-convergence ------------------------------------------------
    {
        GridPtr grid = make_grid(setup.n, setup.n, setup.n);
        State s0 = taylor_green_unit(grid);
        ModelParams params;
        auto run = [&](double dt) {
            StepperConfig cfg;
            cfg.dt = dt;
            cfg.t_end = setup.convergence_t_end;
            cfg.callback_every = 1 << 30;
            return integrate(s0, params, cfg).final_state;
        };
        State s_dt = run(setup.convergence_dt);
        State s_half = run(setup.convergence_dt / 2.0);
        State s_quarter = run(setup.convergence_dt / 4.0);
        const double e1 = state_diff_norm(s_dt, s_half);
        const double e2 = state_diff_norm(s_half, s_quarter);
        const double order = std::log2(e1 / e2);
        const bool pass = order >= 2.7 && order <= 3.3;
        std::ostringstream d;
        d << "observed order " << fmt(order) << " (need 3.0 +- 0.3), e1 = "
          << fmt(e1) << ", e2 = " << fmt(e2);
        add("9", "self-convergence", pass, d.str());
    }

    // ---- 10. reproducibility ---------------------------------------------------
    {
        const fs::path base =
            fs::temp_directory_path() /
            ("tcm_verify_" + std::to_string(
                                 std::chrono::steady_clock::now().time_since_epoch()
                                     .count()));
        RunConfig cfg;
        cfg.n1 = cfg.n2 = cfg.n3 = 16;
        cfg.ic_kind = "random_band";
        cfg.ic_amplitude = 1.0;
        cfg.ic_seed = 5;
        cfg.step.dt = 1e-3;
        cfg.step.t_end = 0.02;
        cfg.checkpoint_every = 10;

        auto read_bytes = [](const fs::path& p) {
            std::ifstream is(p, std::ios::binary);
            std::stringstream buf;
            buf << is.rdbuf();
            return buf.str();
        };

        cfg.out_dir = (base / "a").string();
        RunArtifacts a = run_simulation(cfg);
        cfg.out_dir = (base / "b").string();
        RunArtifacts b = run_simulation(cfg);
        const bool csv_identical =
            read_bytes(a.csv_path) == read_bytes(b.csv_path);

        // checkpoint round trip: bytes and state
        GridPtr grid = make_grid(16, 16, 16);
        State st = random_band_state(grid, 1.3, 99);
        st.time = 0.625;
        const fs::path c1 = base / "one.tcmchk";
        const fs::path c2 = base / "two.tcmchk";
        save_checkpoint(st, 1.5, 4.0, c1.string());
        Checkpoint loaded = load_checkpoint(c1.string());
        save_checkpoint(loaded.state, loaded.alpha, loaded.beta, c2.string());
        const bool chk_identical = read_bytes(c1) == read_bytes(c2);

        State st_phys = to_physical(st);
        bool state_identical = loaded.state.time == st_phys.time;
        for (int c = 0; c < 3 && state_identical; ++c) {
            state_identical = loaded.state.u[c].phys() == st_phys.u[c].phys() &&
                              loaded.state.v[c].phys() == st_phys.v[c].phys();
        }
        state_identical =
            state_identical && loaded.state.theta.phys() == st_phys.theta.phys();

        fs::remove_all(base);
        const bool pass = csv_identical && chk_identical && state_identical;
        std::ostringstream d;
        d << "csv bytes identical: " << (csv_identical ? "yes" : "NO")
          << ", checkpoint bytes identical: " << (chk_identical ? "yes" : "NO")
          << ", state round-trip bitwise: " << (state_identical ? "yes" : "NO");
        add("10", "reproducibility", pass, d.str());
    }

    return results;
}

int cmd_verify(VerifyLevel level, bool tamper) {
    const auto results = run_verification(level, tamper);
    bool all = true;
    std::printf("acceptance criteria (%s level)\n",
                level == VerifyLevel::full ? "full" : "fast");
    for (const auto& r : results) {
        std::printf("[%2s] %-22s %s   %s\n", r.id.c_str(), r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.detail.c_str());
        all = all && r.passed;
    }
    std::printf("RESULT: %zu/%zu criteria passed\n",
                static_cast<std::size_t>(
                    std::count_if(results.begin(), results.end(),
                                  [](const auto& r) { return r.passed; })),
                results.size());
    return all ? kExitOk : kExitVerifyFailure;
}

} // namespace tcm::cli
