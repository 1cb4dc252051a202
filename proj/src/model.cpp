#include "tcm/model.hpp"

#include "tcm/checkpoint.hpp"
#include "tcm/fft.hpp"
#include "tcm/multipliers.hpp"
#include "tcm/norms.hpp"
#include "tcm/operators.hpp"
#include "tcm/random_fields.hpp"

#include <cmath>
#include <stdexcept>

namespace tcm {

void ModelParams::validate() const {
    if (!(alpha >= 1.0) || !std::isfinite(alpha))
        throw std::invalid_argument("ModelParams: alpha must be >= 1");
    if (!(beta >= 1.0) || !std::isfinite(beta))
        throw std::invalid_argument("ModelParams: beta must be >= 1");
}

State to_spectral(const State& s) {
    if (s.rep() == Rep::spectral)
        return s;
    return {to_spectral(s.u), to_spectral(s.v), to_spectral(s.theta), s.time};
}

State to_physical(const State& s) {
    if (s.rep() == Rep::physical)
        return s;
    return {to_physical(s.u), to_physical(s.v), to_physical(s.theta), s.time};
}

VectorField Tendency::du_total() const {
    VectorField out = du_linear;
    out += du_nonlinear;
    return out;
}

VectorField Tendency::dv_total() const {
    VectorField out = dv_linear;
    out += dv_nonlinear;
    return out;
}

Field Tendency::dtheta_total() const {
    Field out = dtheta_linear;
    out += dtheta_nonlinear;
    return out;
}

namespace {

VectorField detail_to_physical(const VectorField& f) {
    VectorField out;
    for (int c = 0; c < 3; ++c)
        out[c] = detail::inverse_transform_trusted(f[c]);
    return out;
}

// |u|^(beta-1) with multiply chains for the small integer exponents that
// dominate the theorem regime
inline double damping_factor(double mag, double em1) {
    if (em1 == 3.0)
        return mag * mag * mag;
    if (em1 == 4.0) {
        const double m2 = mag * mag;
        return m2 * m2;
    }
    if (em1 == 2.0)
        return mag * mag;
    if (em1 == 1.0)
        return mag;
    return mag > 0.0 ? std::pow(mag, em1) : 0.0;
}

} // namespace

VectorField damping_term(const VectorField& u, double beta) {
    if (!(beta >= 1.0))
        throw std::invalid_argument("damping_term: beta must be >= 1");
    u.require_rep(Rep::physical, "damping_term");
    VectorField out(u.grid_ptr(), Rep::physical);
    const auto& a = u[0].phys();
    const auto& b = u[1].phys();
    const auto& c = u[2].phys();
    const double em1 = beta - 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double mag = std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i]);
        const double factor = damping_factor(mag, em1);
        out[0].phys()[i] = factor * a[i];
        out[1].phys()[i] = factor * b[i];
        out[2].phys()[i] = factor * c[i];
    }
    return out;
}

VectorField damping_term_fine(const VectorField& u, double beta) {
    VectorField us = with_rep(u, Rep::spectral);
    VectorField fine = to_physical(refine(dealias(us)));
    VectorField term = to_spectral(damping_term(fine, beta));

    // truncate back to the original grid (the fine field has no content at
    // or beyond the coarse Nyquist after this copy)
    const Grid& gc = u.grid();
    const Grid& gf = term.grid();
    VectorField out(u.grid_ptr(), Rep::spectral);
    for (int c = 0; c < 3; ++c) {
        std::size_t idx = 0;
        for (int i3 = 0; i3 < gc.n3(); ++i3)
            for (int i2 = 0; i2 < gc.n2(); ++i2)
                for (int i1 = 0; i1 < gc.n1(); ++i1, ++idx) {
                    if (gc.is_nyquist(0, i1) || gc.is_nyquist(1, i2) ||
                        gc.is_nyquist(2, i3))
                        continue;
                    const int m1 = gc.mode(0, i1), m2 = gc.mode(1, i2),
                              m3 = gc.mode(2, i3);
                    const int j1 = m1 >= 0 ? m1 : m1 + gf.n1();
                    const int j2 = m2 >= 0 ? m2 : m2 + gf.n2();
                    const int j3 = m3 >= 0 ? m3 : m3 + gf.n3();
                    out[c].spec()[idx] = term[c].spec()[gf.idx(j1, j2, j3)];
                }
    }
    return out;
}

double damping_functional(const VectorField& u_phys, double beta) {
    if (!(beta >= 1.0))
        throw std::invalid_argument("damping_functional: beta must be >= 1");
    const double p = beta + 1.0;
    return std::pow(lp_norm(u_phys, p), p);
}

double damping_functional_fine(const VectorField& u, double beta) {
    VectorField us = with_rep(u, Rep::spectral);
    VectorField fine = to_physical(refine(dealias(us)));
    return damping_functional(fine, beta);
}

Field advect(const VectorField& w, const Field& f) {
    w.require_rep(Rep::physical, "advect");
    require_same_grid(w.grid(), f.grid(), "advect");
    Field fs = with_rep(f, Rep::spectral);

    Field acc(w.grid_ptr(), Rep::physical);
    for (int axis = 1; axis <= 3; ++axis) {
        Field df = to_physical(apply_multiplier(fs, MultiplierSpec::derivative(axis)));
        const auto& wv = w[axis - 1].phys();
        for (std::size_t i = 0; i < acc.phys().size(); ++i)
            acc.phys()[i] += wv[i] * df.phys()[i];
    }
    return dealias(to_spectral(acc));
}

VectorField advect(const VectorField& w, const VectorField& f) {
    VectorField out;
    for (int c = 0; c < 3; ++c)
        out[c] = advect(w, f[c]);
    return out;
}

VectorField tensor_divergence(const VectorField& v) {
    VectorField vp = with_rep(v, Rep::physical);
    const Grid& g = vp.grid();

    VectorField out(vp.grid_ptr(), Rep::spectral);
    Field prod(vp.grid_ptr(), Rep::physical);
    for (int i = 0; i < 3; ++i) {
        Field acc(vp.grid_ptr(), Rep::spectral);
        for (int j = 0; j < 3; ++j) {
            for (std::size_t n = 0; n < g.size(); ++n)
                prod.phys()[n] = vp[j].phys()[n] * vp[i].phys()[n];
            acc += apply_multiplier(to_spectral(prod),
                                    MultiplierSpec::derivative(j + 1));
        }
        out[i] = dealias(acc);
    }
    return out;
}

VectorField barotropic_forcing(const State& state, const ModelParams& params) {
    State ss = to_spectral(state);
    VectorField g(ss.grid_ptr(), Rep::spectral);
    if (params.advection) {
        VectorField up = to_physical(ss.u);
        g += advect(up, ss.u);
        g += tensor_divergence(ss.v);
    }
    if (params.damping) {
        VectorField up = to_physical(ss.u);
        g += dealias(to_spectral(damping_term(up, params.beta)));
    }
    return g;
}

ExplicitTendency rhs_explicit(const State& state, const ModelParams& params) {
    params.validate();
    State ss = to_spectral(state);
    const GridPtr& grid = ss.grid_ptr();
    const Grid& g = *grid;
    const std::size_t n = g.size();

    ExplicitTendency t;
    t.du = VectorField(grid, Rep::spectral);
    t.dv = VectorField(grid, Rep::spectral);
    t.dtheta = Field(grid, Rep::spectral);

    VectorField up;
    if (params.advection || params.damping)
        up = detail_to_physical(ss.u);
    VectorField damp;
    if (params.damping)
        damp = damping_term(up, params.beta);

    if (params.advection) {
        VectorField vp = detail_to_physical(ss.v);

        // shared derivative grids d_j u_i and d_j v_i
        std::array<std::array<Field, 3>, 3> du_p, dv_p;
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) {
                du_p[j][i] = detail::inverse_derivative(ss.u[i], j + 1);
                dv_p[j][i] = detail::inverse_derivative(ss.v[i], j + 1);
            }

        Field acc(grid, Rep::physical);
        Field prod(grid, Rep::physical);
        const double* u0 = up[0].phys().data();
        const double* u1 = up[1].phys().data();
        const double* u2 = up[2].phys().data();
        const double* v0 = vp[0].phys().data();
        const double* v1 = vp[1].phys().data();
        const double* v2 = vp[2].phys().data();
        for (int i = 0; i < 3; ++i) {
            // barotropic explicit bundle: (u.grad)u_i (+ damping_i), one
            // transform per component
            auto& a = acc.phys();
            const double* dui0 = du_p[0][i].phys().data();
            const double* dui1 = du_p[1][i].phys().data();
            const double* dui2 = du_p[2][i].phys().data();
            for (std::size_t x = 0; x < n; ++x)
                a[x] = u0[x] * dui0[x] + u1[x] * dui1[x] + u2[x] * dui2[x];
            if (params.damping) {
                const double* di = damp[i].phys().data();
                for (std::size_t x = 0; x < n; ++x)
                    a[x] += di[x];
            }
            Field bundle = to_spectral(acc);
            // div(v (x) v) contribution, derivatives taken in spectral space
            {
                auto& pr = prod.phys();
                for (int j = 0; j < 3; ++j) {
                    const auto& vj = vp[j].phys();
                    const auto& vi = vp[i].phys();
                    for (std::size_t x = 0; x < n; ++x)
                        pr[x] = vj[x] * vi[x];
                    detail::add_forward_derivative(bundle, prod, j + 1);
                }
            }
            t.du[i] = dealias(bundle);
            t.du[i] *= -1.0;

            // baroclinic explicit bundle: (u.grad)v_i + (v.grad)u_i
            const double* dvi0 = dv_p[0][i].phys().data();
            const double* dvi1 = dv_p[1][i].phys().data();
            const double* dvi2 = dv_p[2][i].phys().data();
            for (std::size_t x = 0; x < n; ++x)
                a[x] = u0[x] * dvi0[x] + u1[x] * dvi1[x] + u2[x] * dvi2[x] +
                       v0[x] * dui0[x] + v1[x] * dui1[x] + v2[x] * dui2[x];
            t.dv[i] = dealias(to_spectral(acc));
            t.dv[i] *= -1.0;
        }

        // temperature transport (u.grad)theta
        auto& a = acc.phys();
        for (std::size_t x = 0; x < n; ++x)
            a[x] = 0.0;
        for (int j = 0; j < 3; ++j) {
            Field dth = detail::inverse_derivative(ss.theta, j + 1);
            const auto& uj = up[j].phys();
            const auto& d = dth.phys();
            for (std::size_t x = 0; x < n; ++x)
                a[x] += uj[x] * d[x];
        }
        t.dtheta = dealias(to_spectral(acc));
        t.dtheta *= -1.0;
    } else if (params.damping) {
        t.du -= dealias(to_spectral(damp));
    }

    if (params.coupling) {
        t.dv -= gradient(ss.theta);
        t.dtheta -= divergence(ss.v);
    }

    t.du = leray_project(t.du);
    return t;
}

Tendency rhs(const State& state, const ModelParams& params) {
    State ss = to_spectral(state);
    const GridPtr& grid = ss.grid_ptr();

    ExplicitTendency ex = rhs_explicit(ss, params);
    Tendency t;
    t.du_nonlinear = std::move(ex.du);
    t.dv_nonlinear = std::move(ex.dv);
    t.dtheta_nonlinear = std::move(ex.dtheta);

    // diagonal linear parts
    if (params.horizontal_viscosity) {
        t.du_linear = apply_multiplier(ss.u, MultiplierSpec::horizontal_laplacian());
        t.du_linear *= -1.0;
    } else {
        t.du_linear = VectorField(grid, Rep::spectral);
    }
    if (params.fractional_dissipation) {
        t.dv_linear =
            apply_multiplier(ss.v, MultiplierSpec::fractional_laplacian(params.alpha));
        t.dv_linear *= -1.0;
    } else {
        t.dv_linear = VectorField(grid, Rep::spectral);
    }
    if (params.thermal_diffusion) {
        t.dtheta_linear = apply_multiplier(ss.theta, MultiplierSpec::full_laplacian());
        t.dtheta_linear *= -1.0;
    } else {
        t.dtheta_linear = Field(grid, Rep::spectral);
    }
    return t;
}

Field pressure_recover(const State& state, const ModelParams& params) {
    VectorField g = barotropic_forcing(state, params);
    return apply_multiplier(divergence(g),
                            MultiplierSpec::inverse_laplacian_zero_mean());
}

IcKind parse_ic_kind(const std::string& name) {
    if (name == "taylor_green")
        return IcKind::taylor_green;
    if (name == "random_band")
        return IcKind::random_band;
    if (name == "from_checkpoint")
        return IcKind::from_checkpoint;
    throw std::invalid_argument("initial_condition: unknown kind '" + name + "'");
}

namespace {

State taylor_green_state(const GridPtr& grid, double amplitude) {
    const Grid& g = *grid;
    const double q1 = Grid::two_pi() / g.l1();
    const double q2 = Grid::two_pi() / g.l2();
    const double q3 = Grid::two_pi() / g.l3();

    State s;
    s.u = VectorField(grid, Rep::physical);
    s.v = VectorField(grid, Rep::physical);
    s.theta = Field(grid, Rep::physical);
    for (int i3 = 0; i3 < g.n3(); ++i3)
        for (int i2 = 0; i2 < g.n2(); ++i2)
            for (int i1 = 0; i1 < g.n1(); ++i1) {
                const double x1 = g.x(0, i1), x2 = g.x(1, i2), x3 = g.x(2, i3);
                const std::size_t n = g.idx(i1, i2, i3);
                s.u[0].phys()[n] =
                    amplitude * std::sin(q1 * x1) * std::cos(q2 * x2) * std::cos(q3 * x3);
                s.u[1].phys()[n] = -amplitude * (q1 / q2) * std::cos(q1 * x1) *
                                   std::sin(q2 * x2) * std::cos(q3 * x3);
                s.u[2].phys()[n] = 0.0;
                // phase-shifted copy for the baroclinic mode
                s.v[0].phys()[n] =
                    amplitude * std::cos(q1 * x1) * std::sin(q2 * x2) * std::sin(q3 * x3);
                s.v[1].phys()[n] = -amplitude * (q1 / q2) * std::sin(q1 * x1) *
                                   std::cos(q2 * x2) * std::sin(q3 * x3);
                s.v[2].phys()[n] = 0.0;
                s.theta.phys()[n] = amplitude * std::sin(q3 * x3);
            }
    return to_spectral(s);
}

void normalize_l2(Field& f, double target) {
    const double n = l2_norm(f);
    if (n > 0.0)
        f *= target / n;
}

void normalize_l2(VectorField& f, double target) {
    const double n = l2_norm(f);
    if (n > 0.0)
        f *= target / n;
}

State random_band_state(const GridPtr& grid, double amplitude,
                        std::uint64_t seed) {
    const Grid& g = *grid;
    int max_mode = std::min({g.n1(), g.n2(), g.n3()}) / 4;
    max_mode = std::min(max_mode, 8);
    max_mode = std::max(max_mode, 1);

    State s;
    s.u = random_vector_field(grid, max_mode, seed, true);
    s.v = random_vector_field(grid, max_mode, seed + 1, false);
    s.theta = random_scalar_field(grid, max_mode, seed + 2);
    normalize_l2(s.u, amplitude);
    normalize_l2(s.v, amplitude);
    normalize_l2(s.theta, amplitude);
    return s;
}

} // namespace

State initial_condition(const GridPtr& grid, const IcSpec& spec) {
    if (!(spec.amplitude >= 0.0))
        throw std::invalid_argument("initial_condition: amplitude must be >= 0");

    State s;
    switch (spec.kind) {
    case IcKind::taylor_green:
        s = taylor_green_state(grid, spec.amplitude);
        break;
    case IcKind::random_band:
        s = random_band_state(grid, spec.amplitude, spec.seed);
        break;
    case IcKind::from_checkpoint: {
        Checkpoint chk = load_checkpoint(spec.checkpoint_path);
        if (!chk.state.grid().same_layout(*grid))
            throw std::invalid_argument(
                "initial_condition: checkpoint grid does not match the configured grid");
        s = to_spectral(chk.state);
        break;
    }
    }
    s.u = leray_project(s.u);
    s.u = dealias(s.u);
    s.v = dealias(s.v);
    s.theta = dealias(s.theta);
    return s;
}

} // namespace tcm
