#pragma once

#include <cstdint>
#include <string>

#include "tcm/field.hpp"

namespace tcm {

/// Parameters of the coupled barotropic/baroclinic/temperature system
///
///   d_t u + (u.grad)u - lap_h u + |u|^(beta-1) u + div(v (x) v) + grad p = 0
///   d_t v + (u.grad)v + (-lap)^alpha v + (v.grad)u + grad theta = 0
///   d_t theta + (u.grad)theta - lap theta + div v = 0
///   div u = 0
///
/// with alpha the fractional dissipation exponent on the baroclinic mode and
/// beta the damping exponent on the barotropic mode. Each dissipative
/// mechanism and each explicit term group can be switched off for
/// verification runs.
struct ModelParams {
    double alpha = 1.5;
    double beta = 4.0;

    bool horizontal_viscosity = true;  // lap_h u
    bool fractional_dissipation = true; // -(-lap)^alpha v
    bool thermal_diffusion = true;     // lap theta
    bool damping = true;               // -|u|^(beta-1) u
    bool advection = true;             // all transport + tensor terms
    bool coupling = true;              // grad theta in v-eq, div v in theta-eq

    void validate() const;

    /// Well-posedness regime of the global-solution theorem: alpha >= 3/2
    /// and beta >= 4.
    bool strong_regime() const { return alpha >= 1.5 && beta >= 4.0; }
    /// Additional smooth-solution window: also beta <= 5.
    bool smooth_regime() const { return strong_regime() && beta <= 5.0; }
};

/// Instantaneous solver state (u, v, theta) on one grid. u is maintained
/// divergence-free by construction.
struct State {
    VectorField u;
    VectorField v;
    Field theta;
    double time = 0.0;

    Rep rep() const { return u.rep(); }
    const Grid& grid() const { return u.grid(); }
    const GridPtr& grid_ptr() const { return u.grid_ptr(); }
};

State to_spectral(const State& s);
State to_physical(const State& s);

/// Time derivative split into the diagonal linear part (pure Fourier
/// multipliers, treated exactly by the integrating factor) and everything
/// else (advection, tensor coupling, damping, pressure projection).
/// All parts are spectral.
struct Tendency {
    VectorField du_linear, du_nonlinear;
    VectorField dv_linear, dv_nonlinear;
    Field dtheta_linear, dtheta_nonlinear;

    VectorField du_total() const;
    VectorField dv_total() const;
    Field dtheta_total() const;
};

/// Pointwise damping term |u|^(beta-1) u, zero where u vanishes. Physical
/// in, physical out. Throws for beta < 1.
VectorField damping_term(const VectorField& u, double beta);

/// Damping term evaluated on a 2x refined grid and truncated back, the
/// reference path for bounding the aliasing error of the pointwise
/// evaluation. Returns a spectral field on the original grid.
VectorField damping_term_fine(const VectorField& u, double beta);

/// Quadrature of |u|^(beta+1), the damping contribution to the energy
/// budget; the fine variant evaluates on a 2x refined grid.
double damping_functional(const VectorField& u_phys, double beta);
double damping_functional_fine(const VectorField& u, double beta);

/// Convective-form advection (w.grad)f: spectral derivatives of f,
/// pointwise products with w, dealiased. w physical, f either
/// representation; returns spectral. w need not be solenoidal.
Field advect(const VectorField& w, const Field& f);
VectorField advect(const VectorField& w, const VectorField& f);

/// div(v (x) v): component i is sum_j d_j(v_j v_i), products dealiased.
/// Accepts either representation; returns spectral.
VectorField tensor_divergence(const VectorField& v);

/// The explicitly-treated part of the tendency (everything except the
/// diagonal dissipation multipliers); what the integrating-factor stepper
/// evaluates per stage.
struct ExplicitTendency {
    VectorField du;
    VectorField dv;
    Field dtheta;
};

ExplicitTendency rhs_explicit(const State& state, const ModelParams& params);

/// Full right-hand side of the system, pressure eliminated by Leray
/// projection of the barotropic equation's explicit terms.
Tendency rhs(const State& state, const ModelParams& params);

/// Pressure reconstruction p = (-lap)^{-1} div[ (u.grad)u + |u|^(beta-1)u
/// + div(v (x) v) ] with the zero-mean convention. Returns a spectral field.
Field pressure_recover(const State& state, const ModelParams& params);

/// The u-equation explicit forcing bundle g (positive sign), shared by rhs
/// (which applies -P g) and pressure_recover.
VectorField barotropic_forcing(const State& state, const ModelParams& params);

enum class IcKind { taylor_green, random_band, from_checkpoint };

IcKind parse_ic_kind(const std::string& name);

struct IcSpec {
    IcKind kind = IcKind::taylor_green;
    double amplitude = 1.0;
    std::uint64_t seed = 1;
    std::string checkpoint_path; // for from_checkpoint
};

/// Band-limited initial states: the classical Taylor-Green profile for u
/// with a phase-shifted copy for v and a single vertical temperature mode,
/// or seeded random band-limited fields normalized to the amplitude.
/// Returns a spectral state with div u = 0.
State initial_condition(const GridPtr& grid, const IcSpec& spec);

} // namespace tcm
