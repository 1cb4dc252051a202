#include "tcm/stepper.hpp"

#include "tcm/fft.hpp"
#include "tcm/norms.hpp"
#include "tcm/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace tcm {

Scheme parse_scheme(const std::string& name) {
    if (name == "if_rk3")
        return Scheme::if_rk3;
    if (name == "if_euler")
        return Scheme::if_euler;
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string scheme_name(Scheme s) {
    return s == Scheme::if_rk3 ? "if_rk3" : "if_euler";
}

void StepperConfig::validate() const {
    if (!adaptive && !(dt > 0.0))
        throw std::invalid_argument("StepperConfig: dt must be > 0");
    if (!(cfl_safety > 0.0) || cfl_safety > 1.0)
        throw std::invalid_argument("StepperConfig: cfl_safety must be in (0,1]");
    if (!(dt_max > 0.0))
        throw std::invalid_argument("StepperConfig: dt_max must be > 0");
    if (!(t_end >= 0.0))
        throw std::invalid_argument("StepperConfig: t_end must be >= 0");
    if (callback_every < 1)
        throw std::invalid_argument("StepperConfig: callback cadence must be >= 1");
}

// Diagonal dissipation symbols and their cached exponentials for the
// current step size.
struct Integrator::Impl {
    Impl(const GridPtr& grid, const ModelParams& params)
        : grid_(grid), params_(params) {
        const Grid& g = *grid;
        const std::size_t n = g.size();
        su_.assign(n, 0.0);
        sv_.assign(n, 0.0);
        st_.assign(n, 0.0);
        std::size_t idx = 0;
        for (int i3 = 0; i3 < g.n3(); ++i3) {
            const double k3 = g.k(2, i3);
            for (int i2 = 0; i2 < g.n2(); ++i2) {
                const double k2 = g.k(1, i2);
                for (int i1 = 0; i1 < g.n1(); ++i1, ++idx) {
                    const double k1 = g.k(0, i1);
                    const double kh2 = k1 * k1 + k2 * k2;
                    const double ksq = kh2 + k3 * k3;
                    if (params.horizontal_viscosity)
                        su_[idx] = kh2;
                    if (params.fractional_dissipation)
                        sv_[idx] = ksq == 0.0 ? 0.0 : std::pow(ksq, params.alpha);
                    if (params.thermal_diffusion)
                        st_[idx] = ksq;
                }
            }
        }
    }

    State advance(const State& state, double dt, Scheme scheme) {
        ensure_exponentials(dt);
        State s0 = to_spectral(state);
        const double t0 = s0.time;

        if (scheme == Scheme::if_euler) {
            ExplicitTendency n1 = rhs_explicit(s0, params_);
            State s1 = s0;
            add_scaled(s1, dt, n1);
            apply_exp(s1, full_);
            finish_stage(s1, t0 + dt);
            check_health(s1);
            return s1;
        }

        // three-stage integrating-factor scheme (Kutta's third order);
        // every integrating factor is a decaying exponential
        ExplicitTendency n1 = rhs_explicit(s0, params_);

        State sa = s0;
        add_scaled(sa, 0.5 * dt, n1);
        apply_exp(sa, half_);
        finish_stage(sa, t0 + 0.5 * dt);
        ExplicitTendency n2 = rhs_explicit(sa, params_);

        State e_s0 = s0;
        apply_exp(e_s0, full_);
        apply_exp_tendency(n1, full_);  // n1 <- E_dt N1
        apply_exp_tendency(n2, half_);  // n2 <- E_dt/2 N2

        State sb = e_s0;
        add_scaled(sb, -dt, n1);
        add_scaled(sb, 2.0 * dt, n2);
        finish_stage(sb, t0 + dt);
        ExplicitTendency n3 = rhs_explicit(sb, params_);

        State s1 = e_s0;
        add_scaled(s1, dt / 6.0, n1);
        add_scaled(s1, 4.0 * dt / 6.0, n2);
        add_scaled(s1, dt / 6.0, n3);
        finish_stage(s1, t0 + dt);
        check_health(s1);
        return s1;
    }

    struct ExpSet {
        double dt = -1.0;
        std::vector<double> eu, ev, et;
    };

    void fill_exp(ExpSet& e, double dt) {
        const std::size_t n = su_.size();
        e.eu.resize(n);
        e.ev.resize(n);
        e.et.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            e.eu[i] = std::exp(-su_[i] * dt);
            e.ev[i] = std::exp(-sv_[i] * dt);
            e.et[i] = std::exp(-st_[i] * dt);
        }
        e.dt = dt;
    }

    void ensure_exponentials(double dt) {
        if (full_.dt != dt) {
            fill_exp(full_, dt);
            fill_exp(half_, 0.5 * dt);
        }
    }

    static void add_scaled(State& s, double a, const ExplicitTendency& t) {
        for (int c = 0; c < 3; ++c) {
            auto& us = s.u[c].spec();
            const auto& du = t.du[c].spec();
            auto& vs = s.v[c].spec();
            const auto& dv = t.dv[c].spec();
            for (std::size_t i = 0; i < us.size(); ++i) {
                us[i] += a * du[i];
                vs[i] += a * dv[i];
            }
        }
        auto& ts = s.theta.spec();
        const auto& dth = t.dtheta.spec();
        for (std::size_t i = 0; i < ts.size(); ++i)
            ts[i] += a * dth[i];
    }

    static void scale_by(std::vector<std::complex<double>>& a,
                         const std::vector<double>& w) {
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] *= w[i];
    }

    void apply_exp(State& s, const ExpSet& e) const {
        for (int c = 0; c < 3; ++c) {
            scale_by(s.u[c].spec(), e.eu);
            scale_by(s.v[c].spec(), e.ev);
        }
        scale_by(s.theta.spec(), e.et);
    }

    void apply_exp_tendency(ExplicitTendency& t, const ExpSet& e) const {
        for (int c = 0; c < 3; ++c) {
            scale_by(t.du[c].spec(), e.eu);
            scale_by(t.dv[c].spec(), e.ev);
        }
        scale_by(t.dtheta.spec(), e.et);
    }

    static void finish_stage(State& s, double time) {
        s.u = leray_project(s.u);
        s.time = time;
    }

    void check_health(const State& s) const {
        const Grid& g = *grid_;
        const std::vector<std::complex<double>>* us[3] = {
            &s.u[0].spec(), &s.u[1].spec(), &s.u[2].spec()};
        const std::vector<std::complex<double>>* vs[3] = {
            &s.v[0].spec(), &s.v[1].spec(), &s.v[2].spec()};
        const auto& ts = s.theta.spec();
        double grad_sq = 0.0;
        double sum_all = 0.0;
        std::size_t idx = 0;
        for (int i3 = 0; i3 < g.n3(); ++i3) {
            const double k3 = g.k(2, i3);
            for (int i2 = 0; i2 < g.n2(); ++i2) {
                const double k2 = g.k(1, i2);
                for (int i1 = 0; i1 < g.n1(); ++i1, ++idx) {
                    const double ksq =
                        g.k(0, i1) * g.k(0, i1) + k2 * k2 + k3 * k3;
                    double local = 0.0;
                    for (int c = 0; c < 3; ++c)
                        local += std::norm((*us[c])[idx]);
                    grad_sq += ksq * local;
                    double other = local;
                    for (int c = 0; c < 3; ++c)
                        other += std::norm((*vs[c])[idx]);
                    other += std::norm(ts[idx]);
                    sum_all += other;
                }
            }
        }
        const double grad_norm = std::sqrt(g.volume() * grad_sq);
        if (!std::isfinite(sum_all) || !std::isfinite(grad_norm))
            throw BlowupError(s.time, "blow-up detected: non-finite state");
        if (grad_norm > kBlowupGradientLimit)
            throw BlowupError(s.time,
                              "blow-up detected: gradient norm exceeded limit");
    }

    GridPtr grid_;
    ModelParams params_;
    std::vector<double> su_, sv_, st_;
    ExpSet full_, half_;
};

Integrator::Integrator(const GridPtr& grid, const ModelParams& params)
    : impl_(std::make_unique<Impl>(grid, params)) {
    params.validate();
}

Integrator::~Integrator() = default;
Integrator::Integrator(Integrator&&) noexcept = default;
Integrator& Integrator::operator=(Integrator&&) noexcept = default;

State Integrator::advance(const State& state, double dt, Scheme scheme) {
    if (!(dt > 0.0))
        throw std::invalid_argument("Integrator::advance: dt must be > 0");
    return impl_->advance(to_spectral(state), dt, scheme);
}

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace

State step(const State& state, const ModelParams& params,
           const StepperConfig& cfg) {
    cfg.validate();
    params.validate();
    State ss = to_spectral(state);
    Integrator stepper(ss.grid_ptr(), params);
    return stepper.advance(ss, cfg.dt, cfg.scheme);
}

double cfl_dt(const State& state, const ModelParams& params,
              const StepperConfig& cfg) {
    cfg.validate();
    State sp = to_physical(state);
    double dt = cfg.dt_max;

    for (int axis = 0; axis < 3; ++axis) {
        const double vmax =
            std::max(max_abs(sp.u[axis].phys()), max_abs(sp.v[axis].phys()));
        if (vmax > 0.0)
            dt = std::min(dt, cfg.cfl_safety * sp.grid().spacing(axis) / vmax);
    }
    if (params.damping) {
        double umax = 0.0;
        for (std::size_t i = 0; i < sp.u[0].phys().size(); ++i) {
            const double m2 = sp.u[0].phys()[i] * sp.u[0].phys()[i] +
                              sp.u[1].phys()[i] * sp.u[1].phys()[i] +
                              sp.u[2].phys()[i] * sp.u[2].phys()[i];
            umax = std::max(umax, m2);
        }
        umax = std::sqrt(umax);
        if (umax > 0.0)
            dt = std::min(dt,
                          cfg.cfl_safety / std::pow(umax, params.beta - 1.0));
    }
    return dt;
}

IntegrateResult integrate(const State& state0, const ModelParams& params,
                          const StepperConfig& cfg, const StepCallback& callback,
                          double lambda_s) {
    cfg.validate();
    params.validate();

    State s = to_spectral(state0);
    Integrator stepper(s.grid_ptr(), params);

    IntegrateResult result;
    diag::EnergyBudget budget;
    budget.init(diag::total_energy(s), diag::dissipation_functional(s, params));

    auto emit = [&](const State& snapshot) {
        diag::DiagnosticsRecord r = diag::record(snapshot, params, budget, lambda_s);
        result.records.push_back(r);
        if (callback)
            callback(snapshot, r);
    };
    emit(s);

    const double horizon = cfg.t_end;
    const double eps = 1e-12 * std::max(1.0, horizon);
    std::size_t steps = 0;
    while (s.time < horizon - eps) {
        double dt = cfg.adaptive ? cfl_dt(s, params, cfg) : cfg.dt;
        dt = std::min(dt, horizon - s.time);
        try {
            s = stepper.advance(s, dt, cfg.scheme);
        } catch (const BlowupError& b) {
            result.blew_up = true;
            result.blowup_time = b.time();
            break;
        }
        ++steps;
        budget.accumulate(dt, diag::dissipation_functional(s, params));
        const bool last = s.time >= horizon - eps;
        if (steps % static_cast<std::size_t>(cfg.callback_every) == 0 || last)
            emit(s);
    }

    result.final_state = s;
    result.steps_taken = steps;
    return result;
}

} // namespace tcm
