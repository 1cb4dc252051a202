#include "doctest.h"

#include <cmath>

#include "tcm/fft.hpp"
#include "tcm/model.hpp"
#include "tcm/multipliers.hpp"
#include "tcm/norms.hpp"
#include "tcm/operators.hpp"
#include "tcm/random_fields.hpp"

#include "test_helpers.hpp"

using namespace tcm;
using namespace tcm_test;

namespace {

State small_random_state(const GridPtr& grid, double amplitude,
                         std::uint64_t seed) {
    IcSpec spec;
    spec.kind = IcKind::random_band;
    spec.amplitude = amplitude;
    spec.seed = seed;
    return initial_condition(grid, spec);
}

} // namespace

TEST_CASE("model params validation and regime predicates") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.strong_regime());
    CHECK(p.smooth_regime());

    p.beta = 6.0;
    CHECK(p.strong_regime());
    CHECK(!p.smooth_regime());

    p.alpha = 1.2;
    CHECK(!p.strong_regime());

    p.alpha = 0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.alpha = 1.5;
    p.beta = 0.2;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("damping term on constants and zero fields") {
    auto grid = make_grid(8, 8, 8);
    VectorField u = vector_from(
        grid, [](double, double, double) { return 2.0; },
        [](double, double, double) { return 0.0; },
        [](double, double, double) { return 0.0; });
    VectorField d = damping_term(u, 4.0);
    for (double v : d[0].phys())
        CHECK(v == doctest::Approx(16.0).epsilon(1e-14));
    for (double v : d[1].phys())
        CHECK(v == 0.0);

    VectorField zero(grid, Rep::physical);
    VectorField dz = damping_term(zero, 4.0);
    CHECK(l2_norm(dz) == 0.0);

    CHECK_THROWS_AS((void)damping_term(u, 0.5), std::invalid_argument);
}

TEST_CASE("damping term at beta=3 matches the pointwise |u|^2 u oracle") {
    auto grid = make_grid(8, 8, 8);
    VectorField u = to_physical(random_vector_field(grid, 2, 51));
    VectorField d = damping_term(u, 3.0);
    for (std::size_t i = 0; i < u[0].phys().size(); ++i) {
        const double sq = u[0].phys()[i] * u[0].phys()[i] +
                          u[1].phys()[i] * u[1].phys()[i] +
                          u[2].phys()[i] * u[2].phys()[i];
        for (int c = 0; c < 3; ++c)
            CHECK(std::abs(d[c].phys()[i] - sq * u[c].phys()[i]) <=
                  1e-13 * (1.0 + std::abs(sq * u[c].phys()[i])));
    }
}

TEST_CASE("fine-grid damping evaluation stays close to the pointwise one") {
    auto grid = make_grid(16, 16, 16);
    VectorField u = random_vector_field(grid, 3, 53);
    VectorField coarse = dealias(to_spectral(damping_term(to_physical(u), 4.0)));
    VectorField fine = dealias(damping_term_fine(u, 4.0));
    VectorField diff = coarse;
    diff -= fine;
    // aliasing difference is small for a smooth band-limited field but
    // need not vanish
    CHECK(l2_norm(diff) <= 0.05 * l2_norm(coarse));

    const double f_std = damping_functional(to_physical(u), 4.0);
    const double f_fine = damping_functional_fine(u, 4.0);
    CHECK(f_std == doctest::Approx(f_fine).epsilon(0.05));
}

TEST_CASE("advection of sin(x1) by a unit x1 stream gives cos(x1)") {
    auto grid = make_grid(16, 16, 16);
    VectorField w = vector_from(
        grid, [](double, double, double) { return 1.0; },
        [](double, double, double) { return 0.0; },
        [](double, double, double) { return 0.0; });
    Field f = field_from(grid, [](double x1, double, double) { return std::sin(x1); });
    Field adv = to_physical(advect(w, f));
    Field expect = field_from(grid, [](double x1, double, double) { return std::cos(x1); });
    CHECK(max_abs_diff(adv.phys(), expect.phys()) <= 1e-13);
}

TEST_CASE("advection of a constant vanishes") {
    auto grid = make_grid(8, 8, 8);
    VectorField w = to_physical(random_vector_field(grid, 2, 3));
    Field c = field_from(grid, [](double, double, double) { return 4.2; });
    CHECK(l2_norm(advect(w, c)) <= 1e-13);
}

TEST_CASE("advection by a solenoidal field is energy neutral") {
    auto grid = make_grid(16, 16, 16);
    VectorField w = to_physical(random_vector_field(grid, 5, 7, true));
    Field f = random_scalar_field(grid, 5, 8);
    Field fp = to_physical(f);

    // quadrature of (w.grad f) f with the derivative computed spectrally
    Field adv(grid, Rep::physical);
    for (int axis = 1; axis <= 3; ++axis) {
        Field df = to_physical(apply_multiplier(f, MultiplierSpec::derivative(axis)));
        for (std::size_t i = 0; i < adv.phys().size(); ++i)
            adv.phys()[i] += w[axis - 1].phys()[i] * df.phys()[i];
    }
    const double integral = l2_inner(adv, fp);
    const double scale = l2_norm(w) * sobolev_norm(f, 1.0) * l2_norm(f);
    CHECK(std::abs(integral) <= 1e-11 * scale);
}

TEST_CASE("advect rejects mismatched grids and wrong representations") {
    auto g1 = make_grid(8, 8, 8);
    auto g2 = make_grid(16, 8, 8);
    VectorField w(g1, Rep::physical);
    Field f(g2, Rep::physical);
    CHECK_THROWS_AS((void)advect(w, f), std::invalid_argument);
    VectorField ws(g1, Rep::spectral);
    Field f1(g1, Rep::physical);
    CHECK_THROWS_AS((void)advect(ws, f1), std::invalid_argument);
}

TEST_CASE("tensor divergence of constants and structured fields vanishes") {
    auto grid = make_grid(8, 8, 8);
    VectorField c = vector_from(
        grid, [](double, double, double) { return 1.0; },
        [](double, double, double) { return -2.0; },
        [](double, double, double) { return 0.5; });
    CHECK(l2_norm(tensor_divergence(c)) <= 1e-13);

    VectorField s = vector_from(
        grid, [](double, double x2, double) { return std::sin(x2); },
        [](double, double, double) { return 0.0; },
        [](double, double, double) { return 0.0; });
    CHECK(l2_norm(tensor_divergence(s)) <= 1e-13);
}

TEST_CASE("tensor divergence satisfies div(v(x)v) = (v.grad)v + (div v)v") {
    auto grid = make_grid(16, 16, 16);
    VectorField v = random_vector_field(grid, 5, 71);
    VectorField vp = to_physical(v);

    VectorField lhs = tensor_divergence(v);

    VectorField rhs_v = advect(vp, v);
    Field divv = to_physical(divergence(v));
    VectorField divv_v(grid, Rep::physical);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < divv.phys().size(); ++i)
            divv_v[c].phys()[i] = divv.phys()[i] * vp[c].phys()[i];
    rhs_v += dealias(to_spectral(divv_v));

    VectorField diff = lhs;
    diff -= rhs_v;
    const double scale = l2_norm(v) * sobolev_norm(v, 1.0);
    CHECK(l2_norm(diff) <= 1e-11 * scale);
}

TEST_CASE("rhs of the zero state is zero") {
    auto grid = make_grid(8, 8, 8);
    State z;
    z.u = VectorField(grid, Rep::spectral);
    z.v = VectorField(grid, Rep::spectral);
    z.theta = Field(grid, Rep::spectral);
    ModelParams p;
    Tendency t = rhs(z, p);
    CHECK(l2_norm(t.du_total()) == 0.0);
    CHECK(l2_norm(t.dv_total()) == 0.0);
    CHECK(l2_norm(t.dtheta_total()) == 0.0);
}

TEST_CASE("rhs of a pure temperature mode exercises only the linear couplings") {
    auto grid = make_grid(16, 16, 16);
    State s;
    s.u = VectorField(grid, Rep::spectral);
    s.v = VectorField(grid, Rep::spectral);
    s.theta = to_spectral(field_from(grid, [](double, double, double x3) {
        return std::sin(x3);
    }));
    ModelParams p;
    Tendency t = rhs(s, p);

    // dv = -grad theta = -(0, 0, cos x3)
    VectorField dv = to_physical(t.dv_total());
    Field expect3 = field_from(grid, [](double, double, double x3) {
        return -std::cos(x3);
    });
    CHECK(l2_norm(dv[0]) <= 1e-13);
    CHECK(l2_norm(dv[1]) <= 1e-13);
    CHECK(max_abs_diff(dv[2].phys(), expect3.phys()) <= 1e-13);

    // dtheta = lap theta = -sin x3 (div v vanishes)
    Field dtheta = to_physical(t.dtheta_total());
    Field expect_t = field_from(grid, [](double, double, double x3) {
        return -std::sin(x3);
    });
    CHECK(max_abs_diff(dtheta.phys(), expect_t.phys()) <= 1e-13);

    CHECK(l2_norm(t.du_total()) <= 1e-13);
}

TEST_CASE("rhs satisfies the differential energy identity to 1e-9") {
    auto grid = make_grid(16, 16, 16);
    State s = small_random_state(grid, 0.4, 2025);
    ModelParams p; // alpha = 3/2, beta = 4

    Tendency t = rhs(s, p);
    State sp = to_physical(s);
    const double lhs = l2_inner(to_physical(t.du_total()), sp.u) +
                       l2_inner(to_physical(t.dv_total()), sp.v) +
                       l2_inner(to_physical(t.dtheta_total()), sp.theta);

    // dissipation functional assembled by quadrature/norm oracles
    VectorField gradh_u(grid, Rep::physical);
    for (int c = 0; c < 3; ++c) {
        Field d1 = to_physical(apply_multiplier(s.u[c], MultiplierSpec::derivative(1)));
        Field d2 = to_physical(apply_multiplier(s.u[c], MultiplierSpec::derivative(2)));
        for (std::size_t i = 0; i < d1.phys().size(); ++i)
            gradh_u[c].phys()[i] = d1.phys()[i] * d1.phys()[i] +
                                   d2.phys()[i] * d2.phys()[i];
    }
    double gradh_sq = 0.0;
    for (int c = 0; c < 3; ++c)
        for (double v : gradh_u[c].phys())
            gradh_sq += v;
    gradh_sq *= grid->cell_volume();

    const double lam_v = sobolev_norm(s.v, p.alpha, true);
    double gradt_sq = 0.0;
    for (int axis = 1; axis <= 3; ++axis) {
        Field d = to_physical(apply_multiplier(s.theta, MultiplierSpec::derivative(axis)));
        for (double v : d.phys())
            gradt_sq += v * v;
    }
    gradt_sq *= grid->cell_volume();

    const double damp = damping_functional(sp.u, p.beta);

    const double rhs_val = -(gradh_sq + lam_v * lam_v + gradt_sq + damp);
    CHECK(lhs == doctest::Approx(rhs_val).epsilon(1e-9));
}

TEST_CASE("switches remove exactly their isolated term") {
    auto grid = make_grid(16, 16, 16);
    State s = small_random_state(grid, 0.7, 99);
    ModelParams full;

    SUBCASE("damping") {
        ModelParams off = full;
        off.damping = false;
        VectorField expected = leray_project(
            dealias(to_spectral(damping_term(to_physical(s.u), full.beta))));
        VectorField diff = rhs(s, off).du_nonlinear;
        diff -= rhs(s, full).du_nonlinear;
        diff -= expected;
        CHECK(l2_norm(diff) <= 1e-12 * std::max(1.0, l2_norm(expected)));
    }
    SUBCASE("thermal diffusion") {
        ModelParams off = full;
        off.thermal_diffusion = false;
        CHECK(l2_norm(rhs(s, off).dtheta_linear) == 0.0);
        Field expected = apply_multiplier(s.theta, MultiplierSpec::full_laplacian());
        Field diff = rhs(s, full).dtheta_linear;
        diff += expected;
        CHECK(l2_norm(diff) <= 1e-13 * std::max(1.0, l2_norm(expected)));
    }
    SUBCASE("coupling") {
        ModelParams off = full;
        off.coupling = false;
        VectorField expected = gradient(s.theta);
        VectorField diff = rhs(s, off).dv_nonlinear;
        diff -= rhs(s, full).dv_nonlinear;
        diff -= expected;
        CHECK(l2_norm(diff) <= 1e-12 * std::max(1.0, l2_norm(expected)));
    }
    SUBCASE("horizontal viscosity") {
        ModelParams off = full;
        off.horizontal_viscosity = false;
        CHECK(l2_norm(rhs(s, off).du_linear) == 0.0);
    }
}

TEST_CASE("with dissipation and damping off, pure advection is energy neutral") {
    auto grid = make_grid(16, 16, 16);
    ModelParams p;
    p.horizontal_viscosity = false;
    p.fractional_dissipation = false;
    p.thermal_diffusion = false;
    p.damping = false;

    State s;
    s.u = random_vector_field(grid, 5, 404, true);
    s.u = dealias(s.u);
    s.v = VectorField(grid, Rep::spectral);
    s.theta = Field(grid, Rep::spectral);

    Tendency t = rhs(s, p);
    const double e_dot = l2_inner(t.du_total(), s.u);
    const double scale = l2_norm(s.u) * l2_norm(s.u) * sobolev_norm(s.u, 1.0);
    CHECK(std::abs(e_dot) <= 1e-11 * scale);
    CHECK(l2_norm(t.dv_total()) == 0.0);
    CHECK(l2_norm(t.dtheta_total()) == 0.0);
}

TEST_CASE("damping monotonicity quadrature is nonnegative for random pairs") {
    auto grid = make_grid(8, 8, 8);
    for (int trial = 0; trial < 20; ++trial) {
        VectorField a = to_physical(random_vector_field(grid, 2, 1000 + trial));
        VectorField b = to_physical(random_vector_field(grid, 2, 2000 + trial));
        const double beta = trial % 2 == 0 ? 4.0 : 5.0;
        VectorField da = damping_term(a, beta);
        VectorField db = damping_term(b, beta);
        double sum = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < da[c].phys().size(); ++i)
                sum += (da[c].phys()[i] - db[c].phys()[i]) *
                       (a[c].phys()[i] - b[c].phys()[i]);
        sum *= grid->cell_volume();
        const double scale = std::pow(l2_norm(a) + l2_norm(b), beta + 1.0);
        CHECK(sum >= -1e-12 * scale);
    }
}

TEST_CASE("pressure of the zero state is zero") {
    auto grid = make_grid(8, 8, 8);
    State z;
    z.u = VectorField(grid, Rep::spectral);
    z.v = VectorField(grid, Rep::spectral);
    z.theta = Field(grid, Rep::spectral);
    CHECK(l2_norm(pressure_recover(z, ModelParams{})) == 0.0);
}

TEST_CASE("pressure of the planar Taylor-Green mode matches the closed form") {
    auto grid = make_grid(16, 16, 16);
    const double amp = 1.3;
    State s;
    s.u = to_spectral(vector_from(
        grid,
        [&](double x1, double x2, double) { return amp * std::sin(x1) * std::cos(x2); },
        [&](double x1, double x2, double) { return -amp * std::cos(x1) * std::sin(x2); },
        [](double, double, double) { return 0.0; }));
    s.v = VectorField(grid, Rep::spectral);
    s.theta = Field(grid, Rep::spectral);

    ModelParams p;
    p.damping = false; // isolate the advective part, which is a pure gradient
    Field pres = to_physical(pressure_recover(s, p));
    Field expect = field_from(grid, [&](double x1, double x2, double) {
        return amp * amp / 4.0 * (std::cos(2.0 * x1) + std::cos(2.0 * x2));
    });
    CHECK(max_abs_diff(pres.phys(), expect.phys()) <= 1e-12 * amp * amp);

    // mean-free convention
    Field pres_s = pressure_recover(s, p);
    CHECK(std::abs(pres_s.spec()[0]) == 0.0);
}

TEST_CASE("recovered pressure gradient equals the projector complement") {
    auto grid = make_grid(16, 16, 16);
    State s = small_random_state(grid, 0.8, 314);
    ModelParams p;

    VectorField g = barotropic_forcing(s, p);
    VectorField minus_g = g;
    minus_g *= -1.0;
    VectorField complement = minus_g;
    complement -= leray_project(minus_g);

    VectorField grad_p = gradient(pressure_recover(s, p));
    VectorField diff = grad_p;
    diff -= complement;
    CHECK(l2_norm(diff) <= 1e-11 * std::max(1.0, l2_norm(g)));
}

TEST_CASE("initial conditions: zero amplitude, solenoidality, determinism") {
    auto grid = make_grid(16, 16, 16);

    IcSpec zero;
    zero.amplitude = 0.0;
    State z = initial_condition(grid, zero);
    CHECK(l2_norm(z.u) == 0.0);
    CHECK(l2_norm(z.v) == 0.0);
    CHECK(l2_norm(z.theta) == 0.0);

    IcSpec tg;
    tg.kind = IcKind::taylor_green;
    tg.amplitude = 1.0;
    State s = initial_condition(grid, tg);
    CHECK(relative_divergence(s.u) <= 1e-14);
    CHECK(l2_norm(s.u) > 0.0);
    CHECK(is_dealiased(s.u[0]));

    IcSpec rnd;
    rnd.kind = IcKind::random_band;
    rnd.amplitude = 2.0;
    rnd.seed = 11;
    State a = initial_condition(grid, rnd);
    State b = initial_condition(grid, rnd);
    CHECK(max_abs_diff(a.u[0].spec(), b.u[0].spec()) == 0.0);
    CHECK(relative_divergence(a.u) <= 1e-12);
    CHECK(l2_norm(a.u) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(l2_norm(a.theta) == doctest::Approx(2.0).epsilon(1e-12));

    IcSpec bad;
    bad.amplitude = -1.0;
    CHECK_THROWS_AS((void)initial_condition(grid, bad), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_ic_kind("vortex"), std::invalid_argument);
}
