#include "doctest.h"

#include <cmath>
#include <random>

#include "tcm/fft.hpp"
#include "tcm/multipliers.hpp"
#include "tcm/norms.hpp"
#include "tcm/operators.hpp"
#include "tcm/random_fields.hpp"

#include "test_helpers.hpp"

using namespace tcm;
using namespace tcm_test;

TEST_CASE("grid validation and wavenumber tables") {
    CHECK_THROWS_AS(Grid(3, 8, 8), std::invalid_argument);
    CHECK_THROWS_AS(Grid(8, 2, 8), std::invalid_argument);
    CHECK_THROWS_AS(Grid(8, 8, 7), std::invalid_argument);
    CHECK_THROWS_AS(Grid(8, 8, 8, -1.0), std::invalid_argument);

    Grid g(8, 8, 8);
    CHECK(g.wavenumbers(0).size() == 8);
    // symmetric about zero except the single Nyquist entry
    for (int m = 1; m < 4; ++m)
        CHECK(g.k(0, m) == -g.k(0, 8 - m));
    CHECK(g.k(0, 4) == doctest::Approx(-4.0));
    CHECK(g.k_deriv(0, 4) == 0.0);

    Grid anis(8, 12, 16, 1.0, 2.0, 4.0);
    CHECK(anis.k(0, 1) == doctest::Approx(Grid::two_pi()));
    CHECK(anis.k(2, 1) == doctest::Approx(Grid::two_pi() / 4.0));
}

TEST_CASE("to_spectral of a constant keeps only the k=0 coefficient") {
    auto grid = make_grid(8, 8, 8);
    Field f = field_from(grid, [](double, double, double) { return 2.5; });
    Field s = to_spectral(f);
    CHECK(s.spec()[grid->idx(0, 0, 0)].real() == doctest::Approx(2.5).epsilon(1e-14));
    double off = 0.0;
    for (std::size_t i = 1; i < s.spec().size(); ++i)
        off = std::max(off, std::abs(s.spec()[i]));
    CHECK(off <= 1e-14);
}

TEST_CASE("to_spectral of sin(x1) has exactly the two expected coefficients") {
    auto grid = make_grid(8, 8, 8);
    Field f = field_from(grid, [](double x1, double, double) { return std::sin(x1); });
    Field s = to_spectral(f);
    // c(+-1,0,0) = -+ i/2
    CHECK(std::abs(s.spec()[grid->idx(1, 0, 0)] -
                   std::complex<double>(0.0, -0.5)) <= 1e-14);
    CHECK(std::abs(s.spec()[grid->idx(7, 0, 0)] -
                   std::complex<double>(0.0, 0.5)) <= 1e-14);
    double off = 0.0;
    const Grid& g = *grid;
    for (int i3 = 0; i3 < 8; ++i3)
        for (int i2 = 0; i2 < 8; ++i2)
            for (int i1 = 0; i1 < 8; ++i1)
                if (!(i2 == 0 && i3 == 0 && (i1 == 1 || i1 == 7)))
                    off = std::max(off, std::abs(s.spec()[g.idx(i1, i2, i3)]));
    CHECK(off <= 1e-14);
}

TEST_CASE("to_spectral matches the brute-force DFT oracle on 4x4x4") {
    auto grid = make_grid(4, 4, 4);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Field f(grid, Rep::physical);
    for (double& v : f.phys())
        v = uni(rng);
    Field s = to_spectral(f);
    auto oracle = brute_force_dft(f);
    CHECK(max_abs_diff(s.spec(), oracle) <= 1e-12);
}

TEST_CASE("single spectral mode reconstructs the expected profile") {
    auto grid = make_grid(8, 8, 8);
    Field s(grid, Rep::spectral);
    // real unit pair at k=(+-1,0,0) -> cos(x1); odd pair -> sin(x1)
    s.spec()[grid->idx(1, 0, 0)] = {0.5, 0.0};
    s.spec()[grid->idx(7, 0, 0)] = {0.5, 0.0};
    Field p = to_physical(s);
    Field expect = field_from(grid, [](double x1, double, double) { return std::cos(x1); });
    CHECK(max_abs_diff(p.phys(), expect.phys()) <= 1e-14);
}

TEST_CASE("round trip is the identity to 1e-12") {
    for (auto dims : {std::array<int, 3>{8, 8, 8}, std::array<int, 3>{12, 8, 6},
                      std::array<int, 3>{10, 6, 14}}) {
        auto grid = make_grid(dims[0], dims[1], dims[2], 1.0, 3.0, 2.0);
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        Field f(grid, Rep::physical);
        for (double& v : f.phys())
            v = uni(rng);
        Field back = to_physical(to_spectral(f));
        double scale = lp_norm(f, std::numeric_limits<double>::infinity());
        CHECK(max_abs_diff(f.phys(), back.phys()) <= 1e-12 * scale);
    }
}

TEST_CASE("to_physical of zero spectral field is zero") {
    auto grid = make_grid(8, 8, 8);
    Field z(grid, Rep::spectral);
    Field p = to_physical(z);
    for (double v : p.phys())
        CHECK(v == 0.0);
}

TEST_CASE("to_physical rejects non-Hermitian input") {
    auto grid = make_grid(8, 8, 8);
    Field s(grid, Rep::spectral);
    s.spec()[grid->idx(1, 0, 0)] = {1.0, 0.3};
    // conjugate partner deliberately inconsistent
    s.spec()[grid->idx(7, 0, 0)] = {0.2, 0.9};
    CHECK_THROWS_AS(to_physical(s), std::invalid_argument);
}

TEST_CASE("representation tag misuse throws") {
    auto grid = make_grid(8, 8, 8);
    Field p(grid, Rep::physical);
    Field s(grid, Rep::spectral);
    CHECK_THROWS_AS(to_spectral(s), std::invalid_argument);
    CHECK_THROWS_AS(to_physical(p), std::invalid_argument);
    CHECK_THROWS_AS(dealias(p), std::invalid_argument);
    CHECK_THROWS_AS((void)apply_multiplier(p, MultiplierSpec::full_laplacian()),
                    std::invalid_argument);
}

TEST_CASE("fractional laplacian multiplier scales mode (0,2,0) by 8 at alpha=3/2") {
    auto grid = make_grid(8, 8, 8);
    Field s(grid, Rep::spectral);
    s.spec()[grid->idx(0, 2, 0)] = {1.0, -2.0};
    s.spec()[grid->idx(0, 6, 0)] = {1.0, 2.0};
    Field out = apply_multiplier(s, MultiplierSpec::fractional_laplacian(1.5));
    CHECK(std::abs(out.spec()[grid->idx(0, 2, 0)] -
                   std::complex<double>(8.0, -16.0)) <= 1e-14 * 8.0);
}

TEST_CASE("derivative multiplier differentiates sin(x1) to cos(x1)") {
    auto grid = make_grid(16, 8, 8);
    Field f = field_from(grid, [](double x1, double, double) { return std::sin(x1); });
    Field d = to_physical(apply_multiplier(to_spectral(f), MultiplierSpec::derivative(1)));
    Field expect = field_from(grid, [](double x1, double, double) { return std::cos(x1); });
    CHECK(max_abs_diff(d.phys(), expect.phys()) <= 1e-13);
}

TEST_CASE("lambda_power(1) equals the square root of the full laplacian symbol") {
    auto grid = make_grid(8, 10, 6, 2.0, 1.0, 5.0);
    Field f = random_scalar_field(grid, 2, 11);
    Field lam = apply_multiplier(f, MultiplierSpec::lambda_power(1.0));

    Field ones(grid, Rep::spectral);
    for (auto& c : ones.spec())
        c = {1.0, 0.0};
    Field symbol = apply_multiplier(ones, MultiplierSpec::full_laplacian());
    double worst = 0.0;
    for (std::size_t i = 0; i < f.spec().size(); ++i) {
        const auto expect = f.spec()[i] * std::sqrt(symbol.spec()[i].real());
        worst = std::max(worst, std::abs(lam.spec()[i] - expect));
    }
    double scale = l2_norm(f);
    CHECK(worst <= 1e-13 * scale);
}

TEST_CASE("lambda_power composition adds exponents per mode") {
    auto grid = make_grid(8, 8, 8);
    Field f = random_scalar_field(grid, 2, 3);
    Field ab = apply_multiplier(apply_multiplier(f, MultiplierSpec::lambda_power(0.7)),
                                MultiplierSpec::lambda_power(0.9));
    Field sum = apply_multiplier(f, MultiplierSpec::lambda_power(1.6));
    for (std::size_t i = 0; i < f.spec().size(); ++i)
        CHECK(std::abs(ab.spec()[i] - sum.spec()[i]) <=
              1e-13 * (1.0 + std::abs(sum.spec()[i])));
}

TEST_CASE("inverse laplacian with zero-mean convention inverts the laplacian") {
    auto grid = make_grid(8, 8, 8);
    Field f = random_scalar_field(grid, 2, 5);
    f.spec()[0] = {0.0, 0.0}; // zero-mean input
    Field cycle = apply_multiplier(apply_multiplier(f, MultiplierSpec::full_laplacian()),
                                   MultiplierSpec::inverse_laplacian_zero_mean());
    CHECK(max_abs_diff(cycle.spec(), f.spec()) <= 1e-13);

    Field with_mean = f;
    with_mean.spec()[0] = {4.0, 0.0};
    Field inv = apply_multiplier(with_mean, MultiplierSpec::inverse_laplacian_zero_mean());
    CHECK(inv.spec()[0] == std::complex<double>(0.0, 0.0));
}

TEST_CASE("leray projection annihilates gradients") {
    auto grid = make_grid(16, 16, 16);
    Field phi = field_from(grid, [](double x1, double, double x3) {
        return std::sin(x1 + x3);
    });
    VectorField grad = gradient(to_spectral(phi));
    VectorField projected = leray_project(grad);
    CHECK(l2_norm(projected) <= 1e-13 * l2_norm(grad));
}

TEST_CASE("leray projection leaves a solenoidal field unchanged") {
    auto grid = make_grid(8, 8, 8);
    VectorField w = vector_from(
        grid, [](double, double x2, double) { return std::sin(x2); },
        [](double, double, double) { return 0.0; },
        [](double, double, double) { return 0.0; });
    VectorField ws = to_spectral(w);
    VectorField p = leray_project(ws);
    for (int c = 0; c < 3; ++c)
        CHECK(max_abs_diff(p[c].spec(), ws[c].spec()) <= 1e-14);
}

TEST_CASE("leray projection output is divergence-free and idempotent") {
    auto grid = make_grid(16, 12, 8, 2.0, 3.0, 1.0);
    VectorField w = random_vector_field(grid, 2, 99);
    VectorField p = leray_project(w);
    CHECK(relative_divergence(p) <= 1e-12);
    VectorField pp = leray_project(p);
    double worst = 0.0;
    for (int c = 0; c < 3; ++c)
        worst = std::max(worst, max_abs_diff(pp[c].spec(), p[c].spec()));
    CHECK(worst <= 1e-13 * l2_norm(p));
}

TEST_CASE("dealias keeps resolved bands and kills the Nyquist mode") {
    auto grid = make_grid(12, 12, 12);
    Field inside = random_scalar_field(grid, 4, 1); // 3*4 = 12 <= 12: retained
    Field cut = dealias(inside);
    CHECK(max_abs_diff(cut.spec(), inside.spec()) == 0.0);
    CHECK(is_dealiased(inside));

    Field nyq(grid, Rep::spectral);
    nyq.spec()[grid->idx(6, 0, 0)] = {1.0, 0.0};
    Field z = dealias(nyq);
    for (const auto& c : z.spec())
        CHECK(c == std::complex<double>(0.0, 0.0));
}

TEST_CASE("dealiased quadratic product matches fine-grid evaluation on 8^3") {
    auto grid = make_grid(8, 8, 8);
    Field a = random_scalar_field(grid, 2, 21);
    Field b = random_scalar_field(grid, 2, 22);

    Field ap = to_physical(a), bp = to_physical(b);
    Field prod(grid, Rep::physical);
    for (std::size_t i = 0; i < prod.phys().size(); ++i)
        prod.phys()[i] = ap.phys()[i] * bp.phys()[i];
    Field coarse = dealias(to_spectral(prod));

    // Oracle: exact product on the 2x refined grid, truncated back.
    Field af = to_physical(refine(a)), bf = to_physical(refine(b));
    Field fine_prod(af.grid_ptr(), Rep::physical);
    for (std::size_t i = 0; i < fine_prod.phys().size(); ++i)
        fine_prod.phys()[i] = af.phys()[i] * bf.phys()[i];
    Field fine_spec = to_spectral(fine_prod);

    const Grid& gc = *grid;
    const Grid& gf = fine_spec.grid();
    double worst = 0.0;
    for (int i3 = 0; i3 < gc.n3(); ++i3)
        for (int i2 = 0; i2 < gc.n2(); ++i2)
            for (int i1 = 0; i1 < gc.n1(); ++i1) {
                const int m1 = gc.mode(0, i1), m2 = gc.mode(1, i2),
                          m3 = gc.mode(2, i3);
                if (3 * std::abs(m1) > gc.n1() || 3 * std::abs(m2) > gc.n2() ||
                    3 * std::abs(m3) > gc.n3())
                    continue;
                const int j1 = m1 >= 0 ? m1 : m1 + gf.n1();
                const int j2 = m2 >= 0 ? m2 : m2 + gf.n2();
                const int j3 = m3 >= 0 ? m3 : m3 + gf.n3();
                worst = std::max(worst,
                                 std::abs(coarse.spec()[gc.idx(i1, i2, i3)] -
                                          fine_spec.spec()[gf.idx(j1, j2, j3)]));
            }
    CHECK(worst <= 1e-12 * l2_norm(prod));
}

TEST_CASE("derivative of a dealiased product obeys the product rule") {
    // quadratic products are alias-free on the retained band when the
    // inputs satisfy 3*max_mode < n
    auto grid = make_grid(16, 16, 16);
    Field a = random_scalar_field(grid, 5, 31);
    Field b = random_scalar_field(grid, 5, 32);
    Field ap = to_physical(a), bp = to_physical(b);

    Field prod(grid, Rep::physical);
    for (std::size_t i = 0; i < prod.phys().size(); ++i)
        prod.phys()[i] = ap.phys()[i] * bp.phys()[i];
    Field lhs = apply_multiplier(dealias(to_spectral(prod)),
                                 MultiplierSpec::derivative(1));

    Field da = to_physical(apply_multiplier(a, MultiplierSpec::derivative(1)));
    Field db = to_physical(apply_multiplier(b, MultiplierSpec::derivative(1)));
    Field rhs_p(grid, Rep::physical);
    for (std::size_t i = 0; i < rhs_p.phys().size(); ++i)
        rhs_p.phys()[i] = da.phys()[i] * bp.phys()[i] + ap.phys()[i] * db.phys()[i];
    Field rhs = dealias(to_spectral(rhs_p));

    CHECK(max_abs_diff(lhs.spec(), rhs.spec()) <= 1e-11 * (1.0 + l2_norm(rhs)));
}

TEST_CASE("refine performs exact trigonometric interpolation") {
    auto grid = make_grid(8, 8, 8);
    Field f = field_from(grid, [](double x1, double x2, double) {
        return std::sin(x1) + 0.5 * std::cos(2.0 * x2);
    });
    Field fine = to_physical(refine(dealias(to_spectral(f))));
    const Grid& gf = fine.grid();
    double worst = 0.0;
    for (int i3 = 0; i3 < gf.n3(); ++i3)
        for (int i2 = 0; i2 < gf.n2(); ++i2)
            for (int i1 = 0; i1 < gf.n1(); ++i1)
                worst = std::max(worst, std::abs(fine.phys()[gf.idx(i1, i2, i3)] -
                                                 (std::sin(gf.x(0, i1)) +
                                                  0.5 * std::cos(2.0 * gf.x(1, i2)))));
    CHECK(worst <= 1e-13);

    Field nyq(grid, Rep::spectral);
    nyq.spec()[grid->idx(4, 0, 0)] = {1.0, 0.0};
    CHECK_THROWS_AS(refine(nyq), std::invalid_argument);
}

TEST_CASE("random fields are deterministic per seed") {
    auto grid = make_grid(16, 16, 16);
    Field a = random_scalar_field(grid, 3, 1234);
    Field b = random_scalar_field(grid, 3, 1234);
    CHECK(max_abs_diff(a.spec(), b.spec()) == 0.0);
    Field c = random_scalar_field(grid, 3, 1235);
    CHECK(max_abs_diff(a.spec(), c.spec()) > 0.0);

    VectorField va = random_vector_field(grid, 3, 77, true);
    VectorField vb = random_vector_field(grid, 3, 77, true);
    for (int i = 0; i < 3; ++i)
        CHECK(max_abs_diff(va[i].spec(), vb[i].spec()) == 0.0);
}

TEST_CASE("random band-limited fields honor the band and produce real fields") {
    auto grid = make_grid(16, 16, 16);
    Field f = random_scalar_field(grid, 1, 5);
    const Grid& g = *grid;
    for (int i3 = 0; i3 < 16; ++i3)
        for (int i2 = 0; i2 < 16; ++i2)
            for (int i1 = 0; i1 < 16; ++i1) {
                const bool in_band = std::abs(g.mode(0, i1)) <= 1 &&
                                     std::abs(g.mode(1, i2)) <= 1 &&
                                     std::abs(g.mode(2, i3)) <= 1;
                if (!in_band)
                    CHECK(f.spec()[g.idx(i1, i2, i3)] ==
                          std::complex<double>(0.0, 0.0));
            }
    CHECK_NOTHROW((void)to_physical(f)); // Hermitian by construction

    VectorField sol = random_vector_field(grid, 4, 9, true);
    CHECK(relative_divergence(sol) <= 1e-12);

    CHECK_THROWS_AS((void)random_scalar_field(grid, 6, 1), std::invalid_argument);
}

TEST_CASE("parseval holds over 1000 random fields") {
    std::vector<GridPtr> grids = {make_grid(8, 8, 8), make_grid(6, 10, 8, 1.0, 2.0, 3.0),
                                  make_grid(12, 4, 6, 0.7, 5.0, 2.2)};
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto& grid = grids[trial % grids.size()];
        Field f(grid, Rep::physical);
        for (double& v : f.phys())
            v = uni(rng);
        const double np = l2_norm(f);
        const double ns = l2_norm(to_spectral(f));
        REQUIRE(std::abs(np - ns) <= 1e-12 * std::max(np, 1e-30));
    }
}
