#include "tcm/diagnostics.hpp"

#include "tcm/fft.hpp"
#include "tcm/multipliers.hpp"
#include "tcm/norms.hpp"
#include "tcm/operators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tcm::diag {

namespace {

enum class Weight { gradh, grad, lap, d3, lambda_2alpha, lambda_2s };

// ksq^e with multiply/sqrt chains for the half-integer exponents the
// monitors use; agrees with std::pow to a couple of ulps
inline double pos_pow(double x, double e) {
    if (e == 1.5)
        return x * std::sqrt(x);
    if (e == 2.5)
        return x * x * std::sqrt(x);
    if (e == 2.0)
        return x * x;
    if (e == 1.0)
        return x;
    return std::pow(x, e);
}

double weighted_sq(const Field& f, Weight w, double expo) {
    const Grid& g = f.grid();
    const auto& coef = f.spec();
    double sum = 0.0;
    std::size_t idx = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3) {
        const double k3 = g.k(2, i3);
        for (int i2 = 0; i2 < g.n2(); ++i2) {
            const double k2 = g.k(1, i2);
            for (int i1 = 0; i1 < g.n1(); ++i1, ++idx) {
                const double k1 = g.k(0, i1);
                const double kh2 = k1 * k1 + k2 * k2;
                const double ksq = kh2 + k3 * k3;
                double weight = 0.0;
                switch (w) {
                case Weight::gradh:
                    weight = kh2;
                    break;
                case Weight::grad:
                    weight = ksq;
                    break;
                case Weight::lap:
                    weight = ksq * ksq;
                    break;
                case Weight::d3:
                    weight = k3 * k3;
                    break;
                case Weight::lambda_2alpha:
                case Weight::lambda_2s:
                    weight = ksq == 0.0 ? 0.0 : pos_pow(ksq, expo);
                    break;
                }
                sum += weight * std::norm(coef[idx]);
            }
        }
    }
    return g.volume() * sum;
}

double weighted_sq(const VectorField& f, Weight w, double expo = 0.0) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
        sum += weighted_sq(f[c], w, expo);
    return sum;
}

double weighted_sq(const Field& f, Weight w) { return weighted_sq(f, w, 0.0); }

} // namespace

void EnergyBudget::init(double e_initial, double phi_initial) {
    e0 = e_initial;
    d_cum = 0.0;
    prev_phi = phi_initial;
    initialized = true;
}

void EnergyBudget::accumulate(double dt, double phi_new) {
    if (!initialized)
        throw std::logic_error("EnergyBudget: accumulate before init");
    // D carries the factor 2, so the trapezoid increment is dt*(a+b)
    d_cum += dt * (prev_phi + phi_new);
    prev_phi = phi_new;
}

double total_energy(const State& state) {
    State s = to_spectral(state);
    const double nu = l2_norm(s.u);
    const double nv = l2_norm(s.v);
    const double nt = l2_norm(s.theta);
    return 0.5 * (nu * nu + nv * nv + nt * nt);
}

double dissipation_functional(const State& state, const ModelParams& params) {
    State s = to_spectral(state);
    double phi = 0.0;
    if (params.horizontal_viscosity)
        phi += weighted_sq(s.u, Weight::gradh);
    if (params.fractional_dissipation)
        phi += weighted_sq(s.v, Weight::lambda_2alpha, params.alpha);
    if (params.thermal_diffusion)
        phi += weighted_sq(s.theta, Weight::grad);
    if (params.damping) {
        VectorField up;
        for (int c = 0; c < 3; ++c)
            up[c] = detail::inverse_transform_trusted(s.u[c]);
        phi += damping_functional(up, params.beta);
    }
    return phi;
}

DiagnosticsRecord record(const State& state, const ModelParams& params,
                         const EnergyBudget& budget, double lambda_s) {
    if (!budget.initialized)
        throw std::logic_error("record: energy budget not initialized");
    State s = to_spectral(state);

    DiagnosticsRecord r;
    r.time = s.time;
    r.l2_u = l2_norm(s.u);
    r.l2_v = l2_norm(s.v);
    r.l2_theta = l2_norm(s.theta);
    r.e = 0.5 * (r.l2_u * r.l2_u + r.l2_v * r.l2_v + r.l2_theta * r.l2_theta);
    r.d_cum = budget.d_cum;
    r.energy_residual = std::abs(2.0 * r.e + r.d_cum - 2.0 * budget.e0);

    r.gradh_u = weighted_sq(s.u, Weight::gradh);
    r.lambda_alpha_v = weighted_sq(s.v, Weight::lambda_2alpha, params.alpha);
    r.grad_theta = weighted_sq(s.theta, Weight::grad);
    r.d3_u = weighted_sq(s.u, Weight::d3);
    r.grad_u = weighted_sq(s.u, Weight::grad);
    r.grad_v = weighted_sq(s.v, Weight::grad);
    r.lap_theta = weighted_sq(s.theta, Weight::lap);
    r.lap_u = weighted_sq(s.u, Weight::lap);
    r.lap_v = weighted_sq(s.v, Weight::lap);
    r.lambda_s_u = weighted_sq(s.u, Weight::lambda_2s, lambda_s);
    r.lambda_s_v = weighted_sq(s.v, Weight::lambda_2s, lambda_s);
    r.lambda_s_theta = weighted_sq(s.theta, Weight::lambda_2s, lambda_s);

    VectorField up;
    for (int c = 0; c < 3; ++c)
        up[c] = detail::inverse_transform_trusted(s.u[c]);
    r.lbeta1_u = damping_functional(up, params.beta);
    r.damping_alias_defect =
        std::abs(r.lbeta1_u - damping_functional_fine(s.u, params.beta));

    r.cancel = cancellation_suite(s).as_array();
    return r;
}

double CancellationReport::max_abs() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d),
                     std::abs(e)});
}

namespace {

// physical-space derivative d_axis f via the spectral symbol
Field phys_derivative(const Field& spec, int axis) {
    return detail::inverse_derivative(spec, axis);
}

double quad_sum(const Grid& g, const std::vector<double>& values) {
    double s = 0.0;
    for (double v : values)
        s += v;
    return g.cell_volume() * s;
}

double safe_ratio(double num, double den) {
    return den == 0.0 ? 0.0 : num / den;
}

} // namespace

CancellationReport cancellation_suite(const State& state) {
    State s = to_spectral(state);
    const Grid& g = s.grid();
    const GridPtr& grid = s.grid_ptr();
    const std::size_t n = g.size();

    VectorField up, vp;
    for (int c = 0; c < 3; ++c) {
        up[c] = detail::inverse_transform_trusted(s.u[c]);
        vp[c] = detail::inverse_transform_trusted(s.v[c]);
    }
    Field thp = detail::inverse_transform_trusted(s.theta);

    std::array<std::array<Field, 3>, 3> du, dv; // [axis][component]
    std::array<Field, 3> dth;
    for (int axis = 0; axis < 3; ++axis) {
        for (int c = 0; c < 3; ++c) {
            du[axis][c] = phys_derivative(s.u[c], axis + 1);
            dv[axis][c] = phys_derivative(s.v[c], axis + 1);
        }
        dth[axis] = phys_derivative(s.theta, axis + 1);
    }

    const double nu = l2_norm(up);
    const double nv = l2_norm(vp);
    const double nth = l2_norm(thp);
    double ndu = 0.0, ndv = 0.0, ndth = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        for (int c = 0; c < 3; ++c) {
            const double a = l2_norm(du[axis][c]);
            const double b = l2_norm(dv[axis][c]);
            ndu += a * a;
            ndv += b * b;
        }
        const double t = l2_norm(dth[axis]);
        ndth += t * t;
    }
    ndu = std::sqrt(ndu);
    ndv = std::sqrt(ndv);
    ndth = std::sqrt(ndth);

    CancellationReport rep;

    {
        std::vector<double> integrand(n, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (std::size_t x = 0; x < n; ++x)
                    integrand[x] += up[j].phys()[x] * du[j][i].phys()[x] *
                                    up[i].phys()[x];
        rep.a = safe_ratio(std::abs(quad_sum(g, integrand)), nu * nu * ndu);
    }
    {
        std::vector<double> integrand(n, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (std::size_t x = 0; x < n; ++x)
                    integrand[x] += up[j].phys()[x] * dv[j][i].phys()[x] *
                                    vp[i].phys()[x];
        rep.b = safe_ratio(std::abs(quad_sum(g, integrand)), nu * ndv * nv);
    }
    {
        std::vector<double> integrand(n, 0.0);
        for (int j = 0; j < 3; ++j)
            for (std::size_t x = 0; x < n; ++x)
                integrand[x] +=
                    up[j].phys()[x] * dth[j].phys()[x] * thp.phys()[x];
        rep.c = safe_ratio(std::abs(quad_sum(g, integrand)), nu * ndth * nth);
    }
    {
        // (div(v (x) v), u): tensor divergence assembled without truncation;
        // paired with u in spectral space (Parseval)
        double first = 0.0;
        Field prod(grid, Rep::physical);
        for (int i = 0; i < 3; ++i) {
            Field acc(grid, Rep::spectral);
            for (int j = 0; j < 3; ++j) {
                for (std::size_t x = 0; x < n; ++x)
                    prod.phys()[x] = vp[j].phys()[x] * vp[i].phys()[x];
                acc += apply_multiplier(to_spectral(prod),
                                        MultiplierSpec::derivative(j + 1));
            }
            first += l2_inner(acc, s.u[i]);
        }
        double second = 0.0;
        {
            std::vector<double> integrand(n, 0.0);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (std::size_t x = 0; x < n; ++x)
                        integrand[x] += vp[j].phys()[x] * du[j][i].phys()[x] *
                                        vp[i].phys()[x];
            second = quad_sum(g, integrand);
        }
        rep.d = safe_ratio(std::abs(first + second),
                           nv * ndv * nu + nv * nv * ndu);
    }
    {
        std::vector<double> integrand(n, 0.0);
        for (int j = 0; j < 3; ++j)
            for (std::size_t x = 0; x < n; ++x)
                integrand[x] += dth[j].phys()[x] * vp[j].phys()[x];
        Field divv = to_physical(divergence(s.v));
        for (std::size_t x = 0; x < n; ++x)
            integrand[x] += divv.phys()[x] * thp.phys()[x];
        rep.e = safe_ratio(std::abs(quad_sum(g, integrand)),
                           ndth * nv + ndv * nth);
    }
    return rep;
}

double monotone_damping_check(const VectorField& a, const VectorField& b,
                              double beta) {
    require_same_grid(a.grid(), b.grid(), "monotone_damping_check");
    VectorField ap = with_rep(a, Rep::physical);
    VectorField bp = with_rep(b, Rep::physical);
    VectorField da = damping_term(ap, beta);
    VectorField db = damping_term(bp, beta);
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < da[c].phys().size(); ++i)
            sum += (da[c].phys()[i] - db[c].phys()[i]) *
                   (ap[c].phys()[i] - bp[c].phys()[i]);
    return ap.grid().cell_volume() * sum;
}

BoundReport bound_monitor(const std::vector<DiagnosticsRecord>& records,
                          const ModelParams& params, double ceiling_factor,
                          double blowup_time, double energy_tol) {
    if (records.empty())
        throw std::invalid_argument("bound_monitor: no records");

    struct Probe {
        const char* name;
        double DiagnosticsRecord::* member;
    };
    // the strong-solution set first, then the smooth-solution extras
    const std::vector<Probe> probes = {
        {"l2_u", &DiagnosticsRecord::l2_u},
        {"l2_v", &DiagnosticsRecord::l2_v},
        {"l2_theta", &DiagnosticsRecord::l2_theta},
        {"d3_u", &DiagnosticsRecord::d3_u},
        {"grad_v", &DiagnosticsRecord::grad_v},
        {"grad_theta", &DiagnosticsRecord::grad_theta},
        {"grad_u", &DiagnosticsRecord::grad_u},
        {"lap_theta", &DiagnosticsRecord::lap_theta},
        {"lap_u", &DiagnosticsRecord::lap_u},
        {"lap_v", &DiagnosticsRecord::lap_v},
        {"lambda_s_u", &DiagnosticsRecord::lambda_s_u},
        {"lambda_s_v", &DiagnosticsRecord::lambda_s_v},
        {"lambda_s_theta", &DiagnosticsRecord::lambda_s_theta},
    };

    BoundReport rep;
    rep.strong_regime = params.strong_regime();
    rep.smooth_regime = params.smooth_regime();
    rep.blew_up = blowup_time >= 0.0;

    bool all_ok = !rep.blew_up;
    double first_bad = rep.blew_up ? blowup_time : -1.0;

    for (const Probe& p : probes) {
        QuantityBound q;
        q.name = p.name;
        q.initial = records.front().*(p.member);
        for (const DiagnosticsRecord& r : records) {
            const double v = r.*(p.member);
            if (!std::isfinite(v)) {
                q.finite = false;
                if (first_bad < 0.0)
                    first_bad = r.time;
            }
            if (v > q.max_value || &r == &records.front()) {
                q.max_value = v;
                q.max_time = r.time;
            }
            if (q.initial > 0.0 && v > ceiling_factor * q.initial &&
                q.within_ceiling) {
                q.within_ceiling = false;
                if (first_bad < 0.0)
                    first_bad = r.time;
            }
        }
        if (!q.finite || !q.within_ceiling)
            all_ok = false;
        rep.quantities.push_back(q);
    }

    const double e0 = records.front().e;
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].e > records[i - 1].e + energy_tol * e0) {
            rep.energy_nonincreasing = false;
            rep.first_energy_violation_time = records[i].time;
            break;
        }
    }
    if (!rep.energy_nonincreasing)
        all_ok = false;

    rep.first_exceedance_time = first_bad;
    rep.verdict = all_ok ? "bounded" : "unbounded";
    return rep;
}

} // namespace tcm::diag
