#include "tcm/probe.hpp"

#include "tcm/fft.hpp"
#include "tcm/norms.hpp"
#include "tcm/operators.hpp"
#include "tcm/random_fields.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcm::diag {

namespace {

double state_distance_sq(const State& a, const State& b) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        Field du = a.u[c];
        du -= b.u[c];
        Field dv = a.v[c];
        dv -= b.v[c];
        const double nu = l2_norm(du);
        const double nv = l2_norm(dv);
        sum += nu * nu + nv * nv;
    }
    Field dt = a.theta;
    dt -= b.theta;
    const double nt = l2_norm(dt);
    return sum + nt * nt;
}

} // namespace

ProbeResult twin_run_probe(const State& state0, double epsilon,
                           const ModelParams& params, const StepperConfig& cfg,
                           std::uint64_t perturbation_seed,
                           const VectorField* direction) {
    if (!(epsilon >= 0.0))
        throw std::invalid_argument("twin_run_probe: epsilon must be >= 0");
    cfg.validate();
    params.validate();
    if (cfg.adaptive)
        throw std::invalid_argument(
            "twin_run_probe: fixed dt required so both runs share the step sequence");

    State base = to_spectral(state0);
    const Grid& g = base.grid();
    int max_mode = std::min({g.n1(), g.n2(), g.n3()}) / 4;
    max_mode = std::max(1, std::min(max_mode, 8));

    VectorField pert;
    if (direction) {
        require_same_grid(direction->grid(), g, "twin_run_probe");
        pert = dealias(leray_project(with_rep(*direction, Rep::spectral)));
    } else {
        pert = dealias(random_vector_field(base.grid_ptr(), max_mode,
                                           perturbation_seed, true));
    }
    const double pn = l2_norm(pert);
    if (pn == 0.0)
        throw std::runtime_error("twin_run_probe: degenerate perturbation");
    pert *= 1.0 / pn;

    State shifted = base;
    if (epsilon > 0.0) {
        for (int c = 0; c < 3; ++c) {
            Field scaled = pert[c];
            scaled *= epsilon;
            shifted.u[c] += scaled;
        }
    }
    // epsilon == 0 keeps the twin bitwise identical

    Integrator engine_a(base.grid_ptr(), params);
    Integrator engine_b(base.grid_ptr(), params);

    ProbeResult result;
    result.epsilon = epsilon;
    result.delta0 = state_distance_sq(base, shifted);

    const double eps2 = epsilon * epsilon;
    auto push = [&](double time, double d) {
        result.times.push_back(time);
        result.delta.push_back(d);
        result.delta_over_eps2.push_back(eps2 == 0.0 ? 0.0 : d / eps2);
    };
    push(base.time, result.delta0);

    const double horizon = cfg.t_end;
    const double tiny = 1e-12 * std::max(1.0, horizon);
    std::size_t steps = 0;
    while (base.time < horizon - tiny) {
        const double dt = std::min(cfg.dt, horizon - base.time);
        try {
            base = engine_a.advance(base, dt, cfg.scheme);
            shifted = engine_b.advance(shifted, dt, cfg.scheme);
        } catch (const BlowupError& b) {
            result.blew_up = true;
            result.blowup_time = b.time();
            break;
        }
        ++steps;
        if (steps % static_cast<std::size_t>(cfg.callback_every) == 0 ||
            base.time >= horizon - tiny)
            push(base.time, state_distance_sq(base, shifted));
    }
    return result;
}

} // namespace tcm::diag
