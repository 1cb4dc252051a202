#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "tcm/diagnostics.hpp"
#include "tcm/model.hpp"

namespace tcm {

enum class Scheme { if_rk3, if_euler };

Scheme parse_scheme(const std::string& name);
std::string scheme_name(Scheme s);

/// Integrating-factor time stepping: the diagonal dissipation multipliers
/// are applied through exact exponentials, everything else explicitly.
struct StepperConfig {
    Scheme scheme = Scheme::if_rk3;
    double dt = 1e-3;        // fixed step when adaptive is false
    bool adaptive = false;   // advective/damping CFL with dt_max cap
    double cfl_safety = 0.9; // in (0, 1]
    double dt_max = 0.1;
    double t_end = 1.0;
    int callback_every = 1; // diagnostics cadence in steps

    void validate() const;
};

/// Raised when the integration produces non-finite values or the gradient
/// norm passes the runaway threshold; carries the detection time.
class BlowupError : public std::runtime_error {
  public:
    BlowupError(double time, const std::string& msg)
        : std::runtime_error(msg), time_(time) {}
    double time() const { return time_; }

  private:
    double time_;
};

/// ||grad u|| ceiling for the blow-up detector.
constexpr double kBlowupGradientLimit = 1e8;

/// Reusable stepping engine; caches the dissipation symbols and the
/// exponential tables for the last step size.
class Integrator {
  public:
    Integrator(const GridPtr& grid, const ModelParams& params);
    ~Integrator();
    Integrator(Integrator&&) noexcept;
    Integrator& operator=(Integrator&&) noexcept;

    State advance(const State& state, double dt, Scheme scheme);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One step of cfg.dt from the given state (spectral in, spectral out;
/// conversions applied as needed). u is re-projected after every stage.
State step(const State& state, const ModelParams& params,
           const StepperConfig& cfg);

/// Advective CFL estimate, min over axes of spacing / max |velocity
/// component| over both u and v, capped by the explicit-damping stability
/// bound cfl_safety / max |u|^(beta-1) and by cfg.dt_max. A quiescent state
/// returns cfg.dt_max.
double cfl_dt(const State& state, const ModelParams& params,
              const StepperConfig& cfg);

struct IntegrateResult {
    State final_state;
    std::vector<diag::DiagnosticsRecord> records;
    bool blew_up = false;
    double blowup_time = -1.0;
    std::size_t steps_taken = 0;
};

using StepCallback =
    std::function<void(const State&, const diag::DiagnosticsRecord&)>;

/// Repeated stepping to cfg.t_end with the dissipation budget accumulated
/// every step and diagnostics emitted at the callback cadence (plus the
/// initial and final instants). A blow-up stops the run and is reported in
/// the result with the record history intact.
IntegrateResult integrate(const State& state0, const ModelParams& params,
                          const StepperConfig& cfg,
                          const StepCallback& callback = {},
                          double lambda_s = diag::kDefaultLambdaS);

} // namespace tcm
