#include "tcm/random_fields.hpp"

#include "tcm/operators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tcm {

namespace {

void check_band(const Grid& g, int max_mode) {
    if (max_mode < 0)
        throw std::invalid_argument("random field: max_mode must be >= 0");
    for (int axis = 0; axis < 3; ++axis)
        if (3 * max_mode > g.n(axis))
            throw std::invalid_argument(
                "random field: max_mode exceeds the dealiased band n/3");
}

bool in_band(const Grid& g, int i1, int i2, int i3, int max_mode) {
    return std::abs(g.mode(0, i1)) <= max_mode &&
           std::abs(g.mode(1, i2)) <= max_mode &&
           std::abs(g.mode(2, i3)) <= max_mode;
}

Field draw_scalar(const Grid& g, const GridPtr& grid, int max_mode,
                  std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Field raw(grid, Rep::spectral);
    std::size_t idx = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3)
        for (int i2 = 0; i2 < g.n2(); ++i2)
            for (int i1 = 0; i1 < g.n1(); ++i1, ++idx)
                if (in_band(g, i1, i2, i3, max_mode)) {
                    const double re = gauss(rng);
                    const double im = gauss(rng);
                    raw.spec()[idx] = {re, im};
                }

    // Hermitian symmetrization; max_mode < n/2 keeps every mode paired
    // with its negative, and the k=0 mode comes out purely real.
    Field out(grid, Rep::spectral);
    idx = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3) {
        const int j3 = (g.n3() - i3) % g.n3();
        for (int i2 = 0; i2 < g.n2(); ++i2) {
            const int j2 = (g.n2() - i2) % g.n2();
            for (int i1 = 0; i1 < g.n1(); ++i1, ++idx) {
                const int j1 = (g.n1() - i1) % g.n1();
                const std::complex<double> z = raw.spec()[idx];
                const std::complex<double> zc =
                    std::conj(raw.spec()[g.idx(j1, j2, j3)]);
                out.spec()[idx] = 0.5 * (z + zc);
            }
        }
    }
    return out;
}

} // namespace

Field random_scalar_field(const GridPtr& grid, int max_mode,
                          std::uint64_t seed) {
    const Grid& g = *grid;
    check_band(g, max_mode);
    std::mt19937_64 rng(seed);
    return draw_scalar(g, grid, max_mode, rng);
}

VectorField random_vector_field(const GridPtr& grid, int max_mode,
                                std::uint64_t seed, bool solenoidal) {
    const Grid& g = *grid;
    check_band(g, max_mode);
    std::mt19937_64 rng(seed);
    VectorField out;
    for (int c = 0; c < 3; ++c)
        out[c] = draw_scalar(g, grid, max_mode, rng);
    if (solenoidal)
        out = leray_project(out);
    return out;
}

} // namespace tcm
