#pragma once

#include <array>
#include <string>
#include <vector>

#include "tcm/model.hpp"

namespace tcm::diag {

/// Default order of the high Sobolev monitor lambda^s (s > 2).
constexpr double kDefaultLambdaS = 2.5;

/// One row of theorem-relevant quantities at a time instant. Norm entries
/// are squared norms except l2_* (plain norms) and lbeta1_u, which is the
/// full power ||u||_{beta+1}^{beta+1}.
struct DiagnosticsRecord {
    double time = 0.0;
    double e = 0.0;     // E = 1/2 (||u||^2 + ||v||^2 + ||theta||^2)
    double d_cum = 0.0; // D(t) = 2 int_0^t Phi ds (trapezoid accumulation)
    double energy_residual = 0.0; // |2E(t) + D(t) - 2E(0)|
    double l2_u = 0.0, l2_v = 0.0, l2_theta = 0.0;
    double gradh_u = 0.0;        // ||grad_h u||^2
    double lambda_alpha_v = 0.0; // ||lambda^alpha v||^2
    double grad_theta = 0.0;     // ||grad theta||^2
    double lbeta1_u = 0.0;       // ||u||_{beta+1}^{beta+1}
    double d3_u = 0.0;           // ||d_3 u||^2
    double grad_u = 0.0;         // ||grad u||^2
    double grad_v = 0.0;         // ||grad v||^2
    double lap_theta = 0.0;      // ||lap theta||^2
    double lap_u = 0.0;          // ||lap u||^2
    double lap_v = 0.0;          // ||lap v||^2
    double lambda_s_u = 0.0, lambda_s_v = 0.0, lambda_s_theta = 0.0;
    double damping_alias_defect = 0.0;
    std::array<double, 5> cancel{}; // normalized residuals (a)..(e)
};

/// Trapezoid accumulator for the dissipation budget
/// D(t) = 2 int_0^t Phi ds; fed every step regardless of output cadence.
struct EnergyBudget {
    double e0 = 0.0;
    double d_cum = 0.0;
    double prev_phi = 0.0;
    bool initialized = false;

    void init(double e_initial, double phi_initial);
    void accumulate(double dt, double phi_new);
};

double total_energy(const State& state);

/// The instantaneous dissipation functional
///   Phi = ||grad_h u||^2 + ||lambda^alpha v||^2 + ||grad theta||^2
///         + ||u||_{beta+1}^{beta+1},
/// restricted to the mechanisms enabled in params so the energy identity
/// stays exact under switch configurations.
double dissipation_functional(const State& state, const ModelParams& params);

DiagnosticsRecord record(const State& state, const ModelParams& params,
                         const EnergyBudget& budget,
                         double lambda_s = kDefaultLambdaS);

/// Normalized residuals of the integral identities behind the energy
/// estimates, each computed by direct quadrature of its integrand:
///   a: (u.grad u, u)                 b: (u.grad v, v)
///   c: (u.grad theta, theta)         d: (div(v(x)v), u) + (v.grad u, v)
///   e: (grad theta, v) + (div v, theta)
struct CancellationReport {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;
    double max_abs() const;
    std::array<double, 5> as_array() const { return {a, b, c, d, e}; }
};

CancellationReport cancellation_suite(const State& state);

/// Quadrature of (|a|^(beta-1) a - |b|^(beta-1) b) . (a - b); the monotone
/// damping structure makes this nonnegative up to round-off.
double monotone_damping_check(const VectorField& a, const VectorField& b,
                              double beta);

struct QuantityBound {
    std::string name;
    double initial = 0.0;
    double max_value = 0.0;
    double max_time = 0.0;
    bool finite = true;
    bool within_ceiling = true;
};

struct BoundReport {
    std::vector<QuantityBound> quantities;
    bool energy_nonincreasing = true;
    double first_energy_violation_time = -1.0;
    bool blew_up = false;
    double first_exceedance_time = -1.0;
    bool strong_regime = false; // parameter regime flags from ModelParams
    bool smooth_regime = false;
    std::string verdict; // "bounded" or "unbounded"
};

/// Boundedness verdicts over a completed run: every monitored norm must
/// stay finite and below ceiling_factor times its initial value (norms
/// starting at zero are only required to stay finite). Verdicts are
/// consistency reports, not proofs.
BoundReport bound_monitor(const std::vector<DiagnosticsRecord>& records,
                          const ModelParams& params,
                          double ceiling_factor = 10.0,
                          double blowup_time = -1.0,
                          double energy_tol = 1e-12);

} // namespace tcm::diag
