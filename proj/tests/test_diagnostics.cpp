#include "doctest.h"

#include <cmath>

#include "tcm/fft.hpp"
#include "tcm/norms.hpp"
#include "tcm/operators.hpp"
#include "tcm/probe.hpp"
#include "tcm/random_fields.hpp"
#include "tcm/stepper.hpp"

#include "test_helpers.hpp"

using namespace tcm;
using namespace tcm_test;

namespace {

State empty_state(const GridPtr& grid) {
    State s;
    s.u = VectorField(grid, Rep::spectral);
    s.v = VectorField(grid, Rep::spectral);
    s.theta = Field(grid, Rep::spectral);
    return s;
}

State random_state(const GridPtr& grid, double amplitude, std::uint64_t seed) {
    IcSpec spec;
    spec.kind = IcKind::random_band;
    spec.amplitude = amplitude;
    spec.seed = seed;
    return initial_condition(grid, spec);
}

} // namespace

TEST_CASE("record of the zero state is identically zero") {
    auto grid = make_grid(16, 16, 16);
    State z = empty_state(grid);
    ModelParams p;
    diag::EnergyBudget budget;
    budget.init(diag::total_energy(z), diag::dissipation_functional(z, p));
    diag::DiagnosticsRecord r = diag::record(z, p, budget);
    CHECK(r.e == 0.0);
    CHECK(r.d_cum == 0.0);
    CHECK(r.energy_residual == 0.0);
    CHECK(r.gradh_u == 0.0);
    CHECK(r.lambda_s_theta == 0.0);
    CHECK(r.lbeta1_u == 0.0);
    for (double c : r.cancel)
        CHECK(c == 0.0);
}

TEST_CASE("record norms match independent norm computations") {
    auto grid = make_grid(16, 16, 16);
    State s = random_state(grid, 0.9, 314159);
    ModelParams p;
    diag::EnergyBudget budget;
    budget.init(diag::total_energy(s), diag::dissipation_functional(s, p));
    diag::DiagnosticsRecord r = diag::record(s, p, budget);

    CHECK(r.l2_u == doctest::Approx(l2_norm(s.u)).epsilon(1e-13));
    const double grad_v_oracle = std::pow(sobolev_norm(s.v, 1.0, true), 2);
    CHECK(r.grad_v == doctest::Approx(grad_v_oracle).epsilon(1e-12));
    const double lap_t_oracle = std::pow(sobolev_norm(s.theta, 2.0, true), 2);
    CHECK(r.lap_theta == doctest::Approx(lap_t_oracle).epsilon(1e-12));
    const double lam_a_oracle = std::pow(sobolev_norm(s.v, p.alpha, true), 2);
    CHECK(r.lambda_alpha_v == doctest::Approx(lam_a_oracle).epsilon(1e-12));
    const double lam_s_oracle = std::pow(sobolev_norm(s.u, 2.5, true), 2);
    CHECK(r.lambda_s_u == doctest::Approx(lam_s_oracle).epsilon(1e-12));
    State sp = to_physical(s);
    CHECK(r.lbeta1_u ==
          doctest::Approx(std::pow(lp_norm(sp.u, 5.0), 5.0)).epsilon(1e-12));
    CHECK(r.energy_residual == 0.0);
}

TEST_CASE("conserved configuration keeps the energy residual at round-off") {
    // with every dissipative and nonlinear mechanism off the residual has no
    // quadrature contribution at all
    auto grid = make_grid(16, 16, 16);
    State s = random_state(grid, 1.0, 55);
    ModelParams p;
    p.horizontal_viscosity = false;
    p.fractional_dissipation = false;
    p.thermal_diffusion = false;
    p.damping = false;
    p.advection = false;
    p.coupling = false;

    StepperConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 0.3;
    IntegrateResult r = integrate(s, p, cfg);
    for (const auto& rec : r.records)
        CHECK(rec.energy_residual <= 1e-12 * r.records[0].e);
}

TEST_CASE("single-mode linear decay has exponential energy and shrinking residual") {
    auto grid = make_grid(16, 16, 16);
    State s = empty_state(grid);
    s.u[1] = to_spectral(field_from(grid, [](double x1, double, double) {
        return std::sin(x1);
    }));
    ModelParams p;
    p.advection = false;
    p.coupling = false;
    p.damping = false;

    auto residual_at = [&](double dt) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.25;
        IntegrateResult r = integrate(s, p, cfg);
        const double e0 = r.records.front().e;
        // E(t) = E(0) exp(-2t) for the k=(1,0,0) horizontal mode
        for (const auto& rec : r.records)
            CHECK(rec.e ==
                  doctest::Approx(e0 * std::exp(-2.0 * rec.time)).epsilon(1e-12));
        return r.records.back().energy_residual / e0;
    };
    const double r1 = residual_at(2e-3);
    const double r2 = residual_at(1e-3);
    CHECK(r1 <= 5e-6);
    // trapezoid budget accumulation is second order
    CHECK(r1 / r2 >= 3.4);
    CHECK(r1 / r2 <= 4.6);
}

TEST_CASE("nonlinear run keeps the normalized energy residual at the dt^2 scale") {
    auto grid = make_grid(16, 16, 16);
    IcSpec tg;
    tg.kind = IcKind::taylor_green;
    tg.amplitude = 0.5;
    State s0 = initial_condition(grid, tg);
    ModelParams p;

    auto residual = [&](double dt) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.25;
        IntegrateResult r = integrate(s0, p, cfg);
        return r.records.back().energy_residual / r.records.front().e;
    };
    const double r1 = residual(1e-3);
    CHECK(r1 <= 1e-5);
    const double r2 = residual(5e-4);
    CHECK(r1 / r2 >= 4.0 * 0.85);
}

TEST_CASE("cancellation suite vanishes on solenoidal band-limited states") {
    auto grid = make_grid(16, 16, 16);
    State z = empty_state(grid);
    diag::CancellationReport zr = diag::cancellation_suite(z);
    CHECK(zr.max_abs() == 0.0);

    for (int trial = 0; trial < 5; ++trial) {
        State s = random_state(grid, 1.0 + 0.3 * trial, 8800 + trial);
        diag::CancellationReport r = diag::cancellation_suite(s);
        CHECK(r.max_abs() <= 1e-11);
    }
}

TEST_CASE("cancellation suite flags an unprojected barotropic mode") {
    auto grid = make_grid(16, 16, 16);
    State s = random_state(grid, 1.0, 999);
    // divergent profile whose div u correlates with |u|^2:
    // (u.grad u, u) = -pi (2 pi)^2 / 2 for this choice
    s.u = to_spectral(vector_from(
        grid, [](double x1, double, double) { return std::sin(x1); },
        [](double x1, double, double) {
            return std::cos(x1) + std::cos(2.0 * x1);
        },
        [](double, double, double) { return 0.0; }));
    diag::CancellationReport r = diag::cancellation_suite(s);
    CHECK(r.a > 1e-3);
}

TEST_CASE("monotone damping check on equal and constant fields") {
    auto grid = make_grid(8, 8, 8);
    VectorField a = to_physical(random_vector_field(grid, 2, 7));
    CHECK(diag::monotone_damping_check(a, a, 4.0) == 0.0);

    VectorField b = vector_from(
        grid, [](double, double, double) { return 1.0; },
        [](double, double, double) { return 0.0; },
        [](double, double, double) { return 0.0; });
    VectorField two = vector_from(
        grid, [](double, double, double) { return 2.0; },
        [](double, double, double) { return 0.0; },
        [](double, double, double) { return 0.0; });
    // (2^4 - 1)(2 - 1) integrated over the box
    const double expect = 15.0 * std::pow(Grid::two_pi(), 3);
    CHECK(diag::monotone_damping_check(two, b, 4.0) ==
          doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("monotone damping quadrature stays nonnegative over a random sweep") {
    auto grid = make_grid(12, 12, 12);
    for (int trial = 0; trial < 50; ++trial) {
        const double beta = trial % 2 == 0 ? 4.0 : 5.0;
        VectorField a = random_vector_field(grid, 3, 100 + trial);
        VectorField b = random_vector_field(grid, 3, 500 + trial);
        const double value = diag::monotone_damping_check(a, b, beta);
        const double scale = std::pow(l2_norm(a) + l2_norm(b), beta + 1.0);
        CHECK(value >= -1e-12 * scale);
    }
}

TEST_CASE("bound monitor gives bounded verdicts for a decaying run") {
    auto grid = make_grid(16, 16, 16);
    IcSpec tg;
    tg.kind = IcKind::taylor_green;
    tg.amplitude = 1.0;
    State s0 = initial_condition(grid, tg);
    ModelParams p;
    StepperConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 0.2;
    IntegrateResult r = integrate(s0, p, cfg);

    diag::BoundReport rep = diag::bound_monitor(r.records, p);
    CHECK(rep.verdict == "bounded");
    CHECK(rep.energy_nonincreasing);
    CHECK(rep.strong_regime);
    CHECK(rep.smooth_regime);
    for (const auto& q : rep.quantities) {
        CHECK(q.finite);
        CHECK(q.within_ceiling);
    }
}

TEST_CASE("bound monitor reports unbounded runs with the first exceedance time") {
    auto grid = make_grid(16, 16, 16);
    State s = random_state(grid, 1.0, 31);
    ModelParams p;
    diag::EnergyBudget budget;
    budget.init(diag::total_energy(s), diag::dissipation_functional(s, p));
    diag::DiagnosticsRecord r0 = diag::record(s, p, budget);

    diag::DiagnosticsRecord grown = r0;
    grown.time = 1.0;
    grown.grad_v = 100.0 * (r0.grad_v + 1.0);
    diag::BoundReport rep = diag::bound_monitor({r0, grown}, p);
    CHECK(rep.verdict == "unbounded");
    CHECK(rep.first_exceedance_time == 1.0);

    // blow-up flag forces the verdict regardless of the records
    diag::BoundReport rep2 = diag::bound_monitor({r0}, p, 10.0, 0.5);
    CHECK(rep2.verdict == "unbounded");
    CHECK(rep2.blew_up);
    CHECK(rep2.first_exceedance_time == 0.5);
}

TEST_CASE("twin-run probe with zero epsilon stays identically zero") {
    auto grid = make_grid(16, 16, 16);
    State s0 = random_state(grid, 0.8, 61);
    ModelParams p;
    StepperConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 0.05;
    diag::ProbeResult r = diag::twin_run_probe(s0, 0.0, p, cfg);
    for (double d : r.delta)
        CHECK(d == 0.0);
}

TEST_CASE("twin-run probe reproduces the exact linear decay of a single mode") {
    auto grid = make_grid(16, 16, 16);
    State base = empty_state(grid);
    ModelParams p;
    p.advection = false;
    p.coupling = false;
    p.damping = false;

    VectorField dir(grid, Rep::spectral);
    // single horizontal mode k=(1,0,0), div-free: u2 component
    dir[1].spec()[grid->idx(1, 0, 0)] = {0.0, -0.5};
    dir[1].spec()[grid->idx(15, 0, 0)] = {0.0, 0.5};

    StepperConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 0.2;
    const double eps = 1e-3;
    diag::ProbeResult r = diag::twin_run_probe(base, eps, p, cfg, 0, &dir);
    CHECK(std::abs(r.delta0 - eps * eps) <= 1e-10 * eps * eps);
    for (std::size_t i = 0; i < r.times.size(); ++i)
        CHECK(r.delta[i] ==
              doctest::Approx(r.delta0 * std::exp(-2.0 * r.times[i])).epsilon(1e-11));
}

TEST_CASE("twin-run probe responds linearly on a nonlinear background") {
    auto grid = make_grid(16, 16, 16);
    IcSpec tg;
    tg.kind = IcKind::taylor_green;
    tg.amplitude = 1.0;
    State s0 = initial_condition(grid, tg);
    ModelParams p;
    StepperConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 0.1;
    cfg.callback_every = 10;

    const double eps = 1e-3;
    diag::ProbeResult a = diag::twin_run_probe(s0, eps, p, cfg);
    diag::ProbeResult b = diag::twin_run_probe(s0, eps / 2.0, p, cfg);
    CHECK(std::abs(a.delta0 - eps * eps) <= 1e-10 * eps * eps);
    REQUIRE(a.times.size() == b.times.size());
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        const double ra = a.delta_over_eps2[i];
        const double rb = b.delta_over_eps2[i];
        CHECK(std::abs(ra - rb) <= 0.1 * std::max(ra, rb));
    }
}
