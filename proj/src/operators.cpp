#include "tcm/operators.hpp"

#include "tcm/multipliers.hpp"

#include <cmath>
#include <stdexcept>

namespace tcm {

VectorField leray_project(const VectorField& w) {
    w.require_rep(Rep::spectral, "leray_project");
    const Grid& g = w.grid();
    VectorField out = w;
    auto& o0 = out[0].spec();
    auto& o1 = out[1].spec();
    auto& o2 = out[2].spec();

    std::size_t idx = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3) {
        const double k3 = g.k_deriv(2, i3);
        for (int i2 = 0; i2 < g.n2(); ++i2) {
            const double k2 = g.k_deriv(1, i2);
            for (int i1 = 0; i1 < g.n1(); ++i1, ++idx) {
                const double k1 = g.k_deriv(0, i1);
                const double ksq = k1 * k1 + k2 * k2 + k3 * k3;
                if (ksq == 0.0)
                    continue;
                const std::complex<double> kdotw =
                    (k1 * o0[idx] + k2 * o1[idx] + k3 * o2[idx]) / ksq;
                o0[idx] -= k1 * kdotw;
                o1[idx] -= k2 * kdotw;
                o2[idx] -= k3 * kdotw;
            }
        }
    }
    return out;
}

namespace {

inline bool keep_two_thirds(const Grid& g, int i1, int i2, int i3) {
    return 3 * std::abs(g.mode(0, i1)) <= g.n1() &&
           3 * std::abs(g.mode(1, i2)) <= g.n2() &&
           3 * std::abs(g.mode(2, i3)) <= g.n3();
}

} // namespace

Field dealias(const Field& f, DealiasRule) {
    f.require_rep(Rep::spectral, "dealias");
    const Grid& g = f.grid();
    Field out = f;
    std::size_t idx = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3)
        for (int i2 = 0; i2 < g.n2(); ++i2)
            for (int i1 = 0; i1 < g.n1(); ++i1, ++idx)
                if (!keep_two_thirds(g, i1, i2, i3))
                    out.spec()[idx] = {0.0, 0.0};
    return out;
}

VectorField dealias(const VectorField& f, DealiasRule rule) {
    VectorField out;
    for (int c = 0; c < 3; ++c)
        out[c] = dealias(f[c], rule);
    return out;
}

bool is_dealiased(const Field& f, double tol_rel) {
    f.require_rep(Rep::spectral, "is_dealiased");
    const Grid& g = f.grid();
    double maxabs = 0.0;
    for (const auto& c : f.spec())
        maxabs = std::max(maxabs, std::abs(c));
    const double tol = tol_rel * maxabs;
    std::size_t idx = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3)
        for (int i2 = 0; i2 < g.n2(); ++i2)
            for (int i1 = 0; i1 < g.n1(); ++i1, ++idx)
                if (!keep_two_thirds(g, i1, i2, i3) &&
                    std::abs(f.spec()[idx]) > tol)
                    return false;
    return true;
}

VectorField gradient(const Field& f) {
    f.require_rep(Rep::spectral, "gradient");
    VectorField out;
    for (int axis = 1; axis <= 3; ++axis)
        out[axis - 1] = apply_multiplier(f, MultiplierSpec::derivative(axis));
    return out;
}

Field divergence(const VectorField& f) {
    f.require_rep(Rep::spectral, "divergence");
    Field out = apply_multiplier(f[0], MultiplierSpec::derivative(1));
    out += apply_multiplier(f[1], MultiplierSpec::derivative(2));
    out += apply_multiplier(f[2], MultiplierSpec::derivative(3));
    return out;
}

double relative_divergence(const VectorField& w) {
    w.require_rep(Rep::spectral, "relative_divergence");
    const Grid& g = w.grid();
    const auto& w0 = w[0].spec();
    const auto& w1 = w[1].spec();
    const auto& w2 = w[2].spec();
    double div2 = 0.0, norm2 = 0.0;
    std::size_t idx = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3) {
        const double k3 = g.k_deriv(2, i3);
        for (int i2 = 0; i2 < g.n2(); ++i2) {
            const double k2 = g.k_deriv(1, i2);
            for (int i1 = 0; i1 < g.n1(); ++i1, ++idx) {
                const double k1 = g.k_deriv(0, i1);
                const std::complex<double> d =
                    k1 * w0[idx] + k2 * w1[idx] + k3 * w2[idx];
                div2 += std::norm(d);
                norm2 += std::norm(w0[idx]) + std::norm(w1[idx]) +
                         std::norm(w2[idx]);
            }
        }
    }
    return norm2 == 0.0 ? 0.0 : std::sqrt(div2 / norm2);
}

namespace {

Field refine_onto(const Field& f, const GridPtr& fine) {
    const Grid& g = f.grid();

    double maxabs = 0.0;
    for (const auto& c : f.spec())
        maxabs = std::max(maxabs, std::abs(c));

    Field out(fine, Rep::spectral);
    std::size_t idx = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3)
        for (int i2 = 0; i2 < g.n2(); ++i2)
            for (int i1 = 0; i1 < g.n1(); ++i1, ++idx) {
                const bool nyq = g.is_nyquist(0, i1) || g.is_nyquist(1, i2) ||
                                 g.is_nyquist(2, i3);
                const std::complex<double> c = f.spec()[idx];
                if (nyq) {
                    if (std::abs(c) > 1e-13 * maxabs)
                        throw std::invalid_argument(
                            "refine: input carries Nyquist content; dealias first");
                    continue;
                }
                const int m1 = g.mode(0, i1), m2 = g.mode(1, i2),
                          m3 = g.mode(2, i3);
                const int j1 = m1 >= 0 ? m1 : m1 + fine->n1();
                const int j2 = m2 >= 0 ? m2 : m2 + fine->n2();
                const int j3 = m3 >= 0 ? m3 : m3 + fine->n3();
                out.spec()[fine->idx(j1, j2, j3)] = c;
            }
    return out;
}

} // namespace

Field refine(const Field& f, int factor) {
    f.require_rep(Rep::spectral, "refine");
    if (factor < 1)
        throw std::invalid_argument("refine: factor must be >= 1");
    if (factor == 1)
        return f;
    const Grid& g = f.grid();
    GridPtr fine = make_grid(factor * g.n1(), factor * g.n2(), factor * g.n3(),
                             g.l1(), g.l2(), g.l3());
    return refine_onto(f, fine);
}

VectorField refine(const VectorField& f, int factor) {
    f.require_rep(Rep::spectral, "refine");
    if (factor < 1)
        throw std::invalid_argument("refine: factor must be >= 1");
    if (factor == 1)
        return f;
    const Grid& g = f.grid();
    GridPtr fine = make_grid(factor * g.n1(), factor * g.n2(), factor * g.n3(),
                             g.l1(), g.l2(), g.l3());
    VectorField out;
    for (int c = 0; c < 3; ++c)
        out[c] = refine_onto(f[c], fine);
    return out;
}

} // namespace tcm
