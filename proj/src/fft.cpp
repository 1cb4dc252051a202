#include "tcm/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tcm {

namespace {

// Real-to-complex plans per grid size, planned once on aligned prototype
// buffers and reused via the new-array execute interface. FFTW_ESTIMATE
// keeps planning heuristic (no timing), so independent processes pick the
// same algorithm and results are bitwise reproducible.
struct PlanSet {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    double* proto_real = nullptr;
    fftw_complex* proto_half = nullptr;
};

std::mutex g_plan_mutex;

std::map<std::array<int, 3>, PlanSet>& plan_cache() {
    static auto* cache = new std::map<std::array<int, 3>, PlanSet>();
    return *cache;
}

const PlanSet& plans_for(const Grid& g) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    const std::array<int, 3> key{g.n1(), g.n2(), g.n3()};
    auto& cache = plan_cache();
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;

    const std::size_t n = g.size();
    const std::size_t nh = static_cast<std::size_t>(g.n3()) * g.n2() *
                           (g.n1() / 2 + 1);
    PlanSet ps;
    ps.proto_real = fftw_alloc_real(n);
    ps.proto_half = fftw_alloc_complex(nh);
    // storage is x1-fastest, so FFTW's row-major dims are (n3, n2, n1)
    ps.r2c = fftw_plan_dft_r2c_3d(g.n3(), g.n2(), g.n1(), ps.proto_real,
                                  ps.proto_half, FFTW_ESTIMATE);
    ps.c2r = fftw_plan_dft_c2r_3d(g.n3(), g.n2(), g.n1(), ps.proto_half,
                                  ps.proto_real, FFTW_ESTIMATE);
    if (!ps.r2c || !ps.c2r)
        throw std::runtime_error("fft: FFTW planning failed");
    return cache.emplace(key, ps).first->second;
}

// per-thread aligned work buffers, grown on demand
struct Scratch {
    double* real = nullptr;
    fftw_complex* half = nullptr;
    std::size_t real_cap = 0;
    std::size_t half_cap = 0;

    ~Scratch() {
        fftw_free(real);
        fftw_free(half);
    }

    void ensure(std::size_t n, std::size_t nh) {
        if (real_cap < n) {
            fftw_free(real);
            real = fftw_alloc_real(n);
            real_cap = n;
        }
        if (half_cap < nh) {
            fftw_free(half);
            half = fftw_alloc_complex(nh);
            half_cap = nh;
        }
    }
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

std::size_t half_size(const Grid& g) {
    return static_cast<std::size_t>(g.n3()) * g.n2() * (g.n1() / 2 + 1);
}

} // namespace

Field to_spectral(const Field& f) {
    f.require_rep(Rep::physical, "to_spectral");
    const Grid& g = f.grid();
    const PlanSet& ps = plans_for(g);
    const std::size_t n = g.size();
    const std::size_t nh = half_size(g);

    Scratch& s = scratch();
    s.ensure(n, nh);
    const auto& src = f.phys();
    for (std::size_t i = 0; i < n; ++i)
        s.real[i] = src[i];
    fftw_execute_dft_r2c(ps.r2c, s.real, s.half);

    // expand the half spectrum to the full Hermitian array, c(-k) = conj(c(k))
    Field out(f.grid_ptr(), Rep::spectral);
    auto* dst = out.spec().data();
    const int n1 = g.n1(), n2 = g.n2(), n3 = g.n3();
    const int n1h = n1 / 2 + 1;
    const double scale = 1.0 / static_cast<double>(n);
    std::size_t idx = 0;
    for (int i3 = 0; i3 < n3; ++i3) {
        const int j3 = (n3 - i3) % n3;
        for (int i2 = 0; i2 < n2; ++i2) {
            const int j2 = (n2 - i2) % n2;
            const std::size_t row = static_cast<std::size_t>(n1h) * (i2 + static_cast<std::size_t>(n2) * i3);
            const std::size_t mrow = static_cast<std::size_t>(n1h) * (j2 + static_cast<std::size_t>(n2) * j3);
            for (int i1 = 0; i1 < n1; ++i1, ++idx) {
                if (i1 < n1h) {
                    const fftw_complex& c = s.half[row + i1];
                    dst[idx] = {c[0] * scale, c[1] * scale};
                } else {
                    const fftw_complex& c = s.half[mrow + (n1 - i1)];
                    dst[idx] = {c[0] * scale, -c[1] * scale};
                }
            }
        }
    }
    return out;
}

Field to_physical(const Field& f) {
    f.require_rep(Rep::spectral, "to_physical");
    const Grid& g = f.grid();
    const PlanSet& ps = plans_for(g);
    const std::size_t n = g.size();
    const std::size_t nh = half_size(g);
    const int n1 = g.n1(), n2 = g.n2(), n3 = g.n3();
    const int n1h = n1 / 2 + 1;

    // Hermitian symmetry check: the c2r transform reads only half of the
    // spectrum, so a violation would otherwise be silently symmetrized.
    const auto* src = f.spec().data();
    double sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sumsq += std::norm(src[i]);
    const double rms_sq = sumsq / static_cast<double>(n);
    double worst_sq = 0.0;
    std::size_t idx = 0;
    for (int i3 = 0; i3 < n3; ++i3) {
        const int j3 = (n3 - i3) % n3;
        for (int i2 = 0; i2 < n2; ++i2) {
            const int j2 = (n2 - i2) % n2;
            const std::size_t mbase =
                static_cast<std::size_t>(n1) * (j2 + static_cast<std::size_t>(n2) * j3);
            for (int i1 = 0; i1 < n1h; ++i1) {
                const std::complex<double> a = src[idx + i1];
                const std::complex<double> b =
                    src[mbase + static_cast<std::size_t>((n1 - i1) % n1)];
                worst_sq = std::max(worst_sq, std::norm(a - std::conj(b)));
            }
            idx += n1;
        }
    }
    if (worst_sq > 1e-20 * rms_sq && worst_sq > 1e-300)
        throw std::invalid_argument(
            "to_physical: spectral input is not Hermitian-symmetric");

    Scratch& s = scratch();
    s.ensure(n, nh);
    idx = 0;
    for (int i3 = 0; i3 < n3; ++i3)
        for (int i2 = 0; i2 < n2; ++i2) {
            const std::size_t row =
                static_cast<std::size_t>(n1h) * (i2 + static_cast<std::size_t>(n2) * i3);
            for (int i1 = 0; i1 < n1h; ++i1) {
                s.half[row + i1][0] = src[idx + i1].real();
                s.half[row + i1][1] = src[idx + i1].imag();
            }
            idx += n1;
        }
    fftw_execute_dft_c2r(ps.c2r, s.half, s.real);

    Field result(f.grid_ptr(), Rep::physical);
    auto& dst = result.phys();
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = s.real[i];
    return result;
}

VectorField to_spectral(const VectorField& f) {
    VectorField out;
    for (int c = 0; c < 3; ++c)
        out[c] = to_spectral(f[c]);
    return out;
}

VectorField to_physical(const VectorField& f) {
    VectorField out;
    for (int c = 0; c < 3; ++c)
        out[c] = to_physical(f[c]);
    return out;
}

Field with_rep(const Field& f, Rep rep) {
    if (f.rep() == rep)
        return f;
    return rep == Rep::spectral ? to_spectral(f) : to_physical(f);
}

VectorField with_rep(const VectorField& f, Rep rep) {
    if (f.rep() == rep)
        return f;
    return rep == Rep::spectral ? to_spectral(f) : to_physical(f);
}

namespace detail {

Field inverse_transform_trusted(const Field& f) {
    f.require_rep(Rep::spectral, "inverse_transform_trusted");
    const Grid& g = f.grid();
    const PlanSet& ps = plans_for(g);
    const std::size_t n = g.size();
    const std::size_t nh = half_size(g);
    const int n1 = g.n1(), n1h = n1 / 2 + 1;

    Scratch& s = scratch();
    s.ensure(n, nh);
    const auto* src = f.spec().data();
    std::size_t idx = 0, hrow = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3)
        for (int i2 = 0; i2 < g.n2(); ++i2) {
            for (int i1 = 0; i1 < n1h; ++i1) {
                s.half[hrow + i1][0] = src[idx + i1].real();
                s.half[hrow + i1][1] = src[idx + i1].imag();
            }
            idx += n1;
            hrow += n1h;
        }
    fftw_execute_dft_c2r(ps.c2r, s.half, s.real);

    Field result(f.grid_ptr(), Rep::physical);
    auto& dst = result.phys();
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = s.real[i];
    return result;
}

Field inverse_derivative(const Field& f, int axis) {
    f.require_rep(Rep::spectral, "inverse_derivative");
    const Grid& g = f.grid();
    const PlanSet& ps = plans_for(g);
    const std::size_t n = g.size();
    const std::size_t nh = half_size(g);
    const int n1 = g.n1(), n1h = n1 / 2 + 1;

    Scratch& s = scratch();
    s.ensure(n, nh);
    const auto* src = f.spec().data();
    std::size_t idx = 0, hrow = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3) {
        const double k3 = g.k_deriv(2, i3);
        for (int i2 = 0; i2 < g.n2(); ++i2) {
            const double k2 = g.k_deriv(1, i2);
            for (int i1 = 0; i1 < n1h; ++i1) {
                const double k = axis == 1 ? g.k_deriv(0, i1)
                                           : (axis == 2 ? k2 : k3);
                // i*k*(re + i*im) = -k*im + i*k*re
                s.half[hrow + i1][0] = -k * src[idx + i1].imag();
                s.half[hrow + i1][1] = k * src[idx + i1].real();
            }
            idx += n1;
            hrow += n1h;
        }
    }
    fftw_execute_dft_c2r(ps.c2r, s.half, s.real);

    Field result(f.grid_ptr(), Rep::physical);
    auto& dst = result.phys();
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = s.real[i];
    return result;
}

void add_forward_derivative(Field& acc, const Field& prod, int axis) {
    acc.require_rep(Rep::spectral, "add_forward_derivative");
    prod.require_rep(Rep::physical, "add_forward_derivative");
    require_same_grid(acc.grid(), prod.grid(), "add_forward_derivative");
    const Grid& g = acc.grid();
    const PlanSet& ps = plans_for(g);
    const std::size_t n = g.size();
    const std::size_t nh = half_size(g);
    const int n1 = g.n1(), n2 = g.n2(), n3 = g.n3();
    const int n1h = n1 / 2 + 1;

    Scratch& s = scratch();
    s.ensure(n, nh);
    const auto& src = prod.phys();
    for (std::size_t i = 0; i < n; ++i)
        s.real[i] = src[i];
    fftw_execute_dft_r2c(ps.r2c, s.real, s.half);

    auto* dst = acc.spec().data();
    const double scale = 1.0 / static_cast<double>(n);
    std::size_t idx = 0;
    for (int i3 = 0; i3 < n3; ++i3) {
        const int j3 = (n3 - i3) % n3;
        const double k3 = g.k_deriv(2, i3);
        for (int i2 = 0; i2 < n2; ++i2) {
            const int j2 = (n2 - i2) % n2;
            const double k2 = g.k_deriv(1, i2);
            const std::size_t row =
                static_cast<std::size_t>(n1h) * (i2 + static_cast<std::size_t>(n2) * i3);
            const std::size_t mrow =
                static_cast<std::size_t>(n1h) * (j2 + static_cast<std::size_t>(n2) * j3);
            for (int i1 = 0; i1 < n1; ++i1, ++idx) {
                double re, im;
                if (i1 < n1h) {
                    re = s.half[row + i1][0] * scale;
                    im = s.half[row + i1][1] * scale;
                } else {
                    re = s.half[mrow + (n1 - i1)][0] * scale;
                    im = -s.half[mrow + (n1 - i1)][1] * scale;
                }
                const double k = axis == 1 ? g.k_deriv(0, i1)
                                           : (axis == 2 ? k2 : k3);
                dst[idx] += std::complex<double>(-k * im, k * re);
            }
        }
    }
}

} // namespace detail

} // namespace tcm
