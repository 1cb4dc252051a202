#pragma once

#include <cstdint>
#include <vector>

#include "tcm/stepper.hpp"

namespace tcm::diag {

/// Continuous-dependence probe: integrates the given state and a copy whose
/// barotropic mode carries a solenoidal perturbation of l2 size epsilon,
/// and tracks delta(t) = ||du||^2 + ||dv||^2 + ||dtheta||^2 at the callback
/// cadence. In the linear-response regime delta(t)/epsilon^2 is independent
/// of epsilon.
struct ProbeResult {
    std::vector<double> times;
    std::vector<double> delta;            // raw squared divergence
    std::vector<double> delta_over_eps2;  // zeros when epsilon == 0
    double epsilon = 0.0;
    double delta0 = 0.0;
    bool blew_up = false;
    double blowup_time = -1.0;
};

/// The perturbation direction defaults to a seeded random solenoidal field;
/// a caller-supplied direction (any nonzero solenoidal field, normalized
/// internally) can replace it.
ProbeResult twin_run_probe(const State& state0, double epsilon,
                           const ModelParams& params, const StepperConfig& cfg,
                           std::uint64_t perturbation_seed = 7777,
                           const VectorField* direction = nullptr);

} // namespace tcm::diag
