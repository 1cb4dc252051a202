#pragma once

#include "tcm/field.hpp"

namespace tcm {

/// A Fourier-multiplier operator. Laplacian-type kinds carry the
/// positive-definite symbol of the *negative* operator, so composing with
/// the right sign is the caller's job when assembling equations:
///   fractional_laplacian(alpha)      |k|^(2 alpha)      ((-lap)^alpha)
///   horizontal_laplacian             k1^2 + k2^2        (-lap_h)
///   full_laplacian                   |k|^2              (-lap)
///   derivative(axis)                 i k_axis           (zero at Nyquist)
///   inverse_laplacian_zero_mean      1/|k|^2, 0 at k=0
///   lambda_power(s)                  |k|^s              (lambda = (-lap)^(1/2))
///   anisotropic_weight(s, sp)        (1+k1^2+k2^2)^(s/2) (1+k3^2)^(sp/2)
struct MultiplierSpec {
    enum class Kind {
        fractional_laplacian,
        horizontal_laplacian,
        full_laplacian,
        derivative,
        inverse_laplacian_zero_mean,
        lambda_power,
        anisotropic_weight,
    };

    Kind kind;
    double a = 0.0; // alpha for fractional_laplacian, s for powers/weights
    double b = 0.0; // s' for anisotropic_weight
    int axis = 0;   // 1..3 for derivative

    static MultiplierSpec fractional_laplacian(double alpha);
    static MultiplierSpec horizontal_laplacian();
    static MultiplierSpec full_laplacian();
    static MultiplierSpec derivative(int axis);
    static MultiplierSpec inverse_laplacian_zero_mean();
    static MultiplierSpec lambda_power(double s);
    static MultiplierSpec anisotropic_weight(double s, double sp);
};

Field apply_multiplier(const Field& f, const MultiplierSpec& m);
VectorField apply_multiplier(const VectorField& f, const MultiplierSpec& m);

} // namespace tcm
