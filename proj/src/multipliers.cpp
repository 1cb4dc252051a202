#include "tcm/multipliers.hpp"

#include <cmath>
#include <stdexcept>

namespace tcm {

MultiplierSpec MultiplierSpec::fractional_laplacian(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("fractional_laplacian: alpha must be >= 0");
    return {Kind::fractional_laplacian, alpha, 0.0, 0};
}

MultiplierSpec MultiplierSpec::horizontal_laplacian() {
    return {Kind::horizontal_laplacian, 0.0, 0.0, 0};
}

MultiplierSpec MultiplierSpec::full_laplacian() {
    return {Kind::full_laplacian, 0.0, 0.0, 0};
}

MultiplierSpec MultiplierSpec::derivative(int axis) {
    if (axis < 1 || axis > 3)
        throw std::invalid_argument("derivative: axis must be 1, 2 or 3");
    return {Kind::derivative, 0.0, 0.0, axis};
}

MultiplierSpec MultiplierSpec::inverse_laplacian_zero_mean() {
    return {Kind::inverse_laplacian_zero_mean, 0.0, 0.0, 0};
}

MultiplierSpec MultiplierSpec::lambda_power(double s) {
    if (!std::isfinite(s))
        throw std::invalid_argument("lambda_power: s must be finite");
    return {Kind::lambda_power, s, 0.0, 0};
}

MultiplierSpec MultiplierSpec::anisotropic_weight(double s, double sp) {
    if (!std::isfinite(s) || !std::isfinite(sp))
        throw std::invalid_argument("anisotropic_weight: exponents must be finite");
    return {Kind::anisotropic_weight, s, sp, 0};
}

namespace {

inline double lambda_weight(double ksq, double s) {
    if (ksq == 0.0)
        return s == 0.0 ? 1.0 : 0.0; // zero-mean pseudo-inverse convention
    return std::pow(ksq, 0.5 * s);
}

} // namespace

Field apply_multiplier(const Field& f, const MultiplierSpec& m) {
    f.require_rep(Rep::spectral, "apply_multiplier");
    const Grid& g = f.grid();
    Field out(f.grid_ptr(), Rep::spectral);
    const auto& in = f.spec();
    auto& dst = out.spec();

    std::size_t idx = 0;
    for (int i3 = 0; i3 < g.n3(); ++i3) {
        const double k3 = g.k(2, i3);
        for (int i2 = 0; i2 < g.n2(); ++i2) {
            const double k2 = g.k(1, i2);
            for (int i1 = 0; i1 < g.n1(); ++i1, ++idx) {
                const double k1 = g.k(0, i1);
                const double kh2 = k1 * k1 + k2 * k2;
                const double ksq = kh2 + k3 * k3;
                switch (m.kind) {
                case MultiplierSpec::Kind::fractional_laplacian:
                    dst[idx] = in[idx] * lambda_weight(ksq, 2.0 * m.a);
                    break;
                case MultiplierSpec::Kind::horizontal_laplacian:
                    dst[idx] = in[idx] * kh2;
                    break;
                case MultiplierSpec::Kind::full_laplacian:
                    dst[idx] = in[idx] * ksq;
                    break;
                case MultiplierSpec::Kind::derivative: {
                    const int ia = m.axis == 1 ? i1 : (m.axis == 2 ? i2 : i3);
                    const double kd = g.k_deriv(m.axis - 1, ia);
                    dst[idx] = in[idx] * std::complex<double>(0.0, kd);
                    break;
                }
                case MultiplierSpec::Kind::inverse_laplacian_zero_mean:
                    dst[idx] = ksq == 0.0 ? std::complex<double>(0.0, 0.0)
                                          : in[idx] / ksq;
                    break;
                case MultiplierSpec::Kind::lambda_power:
                    dst[idx] = in[idx] * lambda_weight(ksq, m.a);
                    break;
                case MultiplierSpec::Kind::anisotropic_weight:
                    dst[idx] = in[idx] * (std::pow(1.0 + kh2, 0.5 * m.a) *
                                          std::pow(1.0 + k3 * k3, 0.5 * m.b));
                    break;
                }
            }
        }
    }
    return out;
}

VectorField apply_multiplier(const VectorField& f, const MultiplierSpec& m) {
    VectorField out;
    for (int c = 0; c < 3; ++c)
        out[c] = apply_multiplier(f[c], m);
    return out;
}

} // namespace tcm
