#include "tcm/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tcm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_exponent(double p, const char* what) {
    if (p == kInf)
        return;
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::invalid_argument(std::string(what) +
                                    ": exponent must be >= 1 or infinity");
}

double spectral_weighted_l2(const Field& f, double (*w)(double, double, double,
                                                        double, double),
                            double s, double sp) {
    const Grid& g = f.grid();
    double sum = 0.0;
    std::size_t idx = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3) {
        const double k3 = g.k(2, i3);
        for (int i2 = 0; i2 < g.n2(); ++i2) {
            const double k2 = g.k(1, i2);
            for (int i1 = 0; i1 < g.n1(); ++i1, ++idx) {
                const double k1 = g.k(0, i1);
                const double weight = w(k1, k2, k3, s, sp);
                sum += weight * weight * std::norm(f.spec()[idx]);
            }
        }
    }
    return std::sqrt(g.volume() * sum);
}

double weight_inhomogeneous(double k1, double k2, double k3, double s, double) {
    return std::pow(1.0 + k1 * k1 + k2 * k2 + k3 * k3, 0.5 * s);
}

double weight_homogeneous(double k1, double k2, double k3, double s, double) {
    const double ksq = k1 * k1 + k2 * k2 + k3 * k3;
    if (ksq == 0.0)
        return s == 0.0 ? 1.0 : 0.0;
    return std::pow(ksq, 0.5 * s);
}

double weight_anisotropic(double k1, double k2, double k3, double s, double sp) {
    return std::pow(1.0 + k1 * k1 + k2 * k2, 0.5 * s) *
           std::pow(1.0 + k3 * k3, 0.5 * sp);
}

} // namespace

double l2_norm(const Field& f) {
    const Grid& g = f.grid();
    if (f.rep() == Rep::physical) {
        double sum = 0.0;
        for (double v : f.phys())
            sum += v * v;
        return std::sqrt(g.cell_volume() * sum);
    }
    double sum = 0.0;
    for (const auto& c : f.spec())
        sum += std::norm(c);
    return std::sqrt(g.volume() * sum);
}

double l2_norm(const VectorField& f) {
    double sq = 0.0;
    for (int c = 0; c < 3; ++c) {
        const double n = l2_norm(f[c]);
        sq += n * n;
    }
    return std::sqrt(sq);
}

namespace {

// |v|^p with multiply chains for small integer p
inline double abs_pow(double v, double p, int ip) {
    const double a = std::abs(v);
    if (ip > 0) {
        double acc = a;
        for (int k = 1; k < ip; ++k)
            acc *= a;
        return acc;
    }
    return std::pow(a, p);
}

inline int small_int_exponent(double p) {
    const int ip = static_cast<int>(p);
    return (p == static_cast<double>(ip) && ip >= 1 && ip <= 12) ? ip : 0;
}

} // namespace

double lp_norm(const Field& f, double p) {
    check_exponent(p, "lp_norm");
    f.require_rep(Rep::physical, "lp_norm");
    const Grid& g = f.grid();
    if (p == kInf) {
        double m = 0.0;
        for (double v : f.phys())
            m = std::max(m, std::abs(v));
        return m;
    }
    const int ip = small_int_exponent(p);
    double sum = 0.0;
    for (double v : f.phys())
        sum += abs_pow(v, p, ip);
    return std::pow(g.cell_volume() * sum, 1.0 / p);
}

double lp_norm(const VectorField& f, double p) {
    check_exponent(p, "lp_norm");
    f.require_rep(Rep::physical, "lp_norm");
    const Grid& g = f.grid();
    const auto& a = f[0].phys();
    const auto& b = f[1].phys();
    const auto& c = f[2].phys();
    if (p == kInf) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            m = std::max(m, std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i]));
        return m;
    }
    const int ip = small_int_exponent(p);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += abs_pow(std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i]), p, ip);
    return std::pow(g.cell_volume() * sum, 1.0 / p);
}

double anisotropic_mixed_norm(const Field& f, double p_h, double q_v,
                              MixedOrder order) {
    check_exponent(p_h, "anisotropic_mixed_norm (horizontal)");
    check_exponent(q_v, "anisotropic_mixed_norm (vertical)");
    f.require_rep(Rep::physical, "anisotropic_mixed_norm");
    const Grid& g = f.grid();
    const double dA = g.spacing(0) * g.spacing(1);
    const double dz = g.spacing(2);
    const auto& v = f.phys();

    if (order == MixedOrder::vertical_outer) {
        // inner: L^p over (x1,x2) per level, outer: L^q over x3
        double outer = 0.0;
        for (int i3 = 0; i3 < g.n3(); ++i3) {
            double inner = 0.0;
            for (int i2 = 0; i2 < g.n2(); ++i2)
                for (int i1 = 0; i1 < g.n1(); ++i1) {
                    const double a = std::abs(v[g.idx(i1, i2, i3)]);
                    inner = p_h == kInf ? std::max(inner, a)
                                        : inner + std::pow(a, p_h);
                }
            const double level =
                p_h == kInf ? inner : std::pow(dA * inner, 1.0 / p_h);
            outer = q_v == kInf ? std::max(outer, level)
                                : outer + std::pow(level, q_v);
        }
        return q_v == kInf ? outer : std::pow(dz * outer, 1.0 / q_v);
    }

    // inner: L^q over x3 per horizontal position, outer: L^p over (x1,x2)
    double outer = 0.0;
    for (int i2 = 0; i2 < g.n2(); ++i2)
        for (int i1 = 0; i1 < g.n1(); ++i1) {
            double inner = 0.0;
            for (int i3 = 0; i3 < g.n3(); ++i3) {
                const double a = std::abs(v[g.idx(i1, i2, i3)]);
                inner = q_v == kInf ? std::max(inner, a)
                                    : inner + std::pow(a, q_v);
            }
            const double column =
                q_v == kInf ? inner : std::pow(dz * inner, 1.0 / q_v);
            outer = p_h == kInf ? std::max(outer, column)
                                : outer + std::pow(column, p_h);
        }
    return p_h == kInf ? outer : std::pow(dA * outer, 1.0 / p_h);
}

double sobolev_norm(const Field& f, double s, bool homogeneous) {
    f.require_rep(Rep::spectral, "sobolev_norm");
    return spectral_weighted_l2(
        f, homogeneous ? weight_homogeneous : weight_inhomogeneous, s, 0.0);
}

double sobolev_norm(const VectorField& f, double s, bool homogeneous) {
    double sq = 0.0;
    for (int c = 0; c < 3; ++c) {
        const double n = sobolev_norm(f[c], s, homogeneous);
        sq += n * n;
    }
    return std::sqrt(sq);
}

double anisotropic_sobolev_norm(const Field& f, double s, double sp) {
    f.require_rep(Rep::spectral, "anisotropic_sobolev_norm");
    return spectral_weighted_l2(f, weight_anisotropic, s, sp);
}

double anisotropic_sobolev_norm(const VectorField& f, double s, double sp) {
    double sq = 0.0;
    for (int c = 0; c < 3; ++c) {
        const double n = anisotropic_sobolev_norm(f[c], s, sp);
        sq += n * n;
    }
    return std::sqrt(sq);
}

double l2_inner(const Field& a, const Field& b) {
    require_same_grid(a.grid(), b.grid(), "l2_inner");
    if (a.rep() != b.rep())
        throw std::invalid_argument("l2_inner: representation mismatch");
    const Grid& g = a.grid();
    if (a.rep() == Rep::physical) {
        double sum = 0.0;
        for (std::size_t i = 0; i < a.phys().size(); ++i)
            sum += a.phys()[i] * b.phys()[i];
        return g.cell_volume() * sum;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.spec().size(); ++i)
        sum += (a.spec()[i] * std::conj(b.spec()[i])).real();
    return g.volume() * sum;
}

double l2_inner(const VectorField& a, const VectorField& b) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
        sum += l2_inner(a[c], b[c]);
    return sum;
}

} // namespace tcm
