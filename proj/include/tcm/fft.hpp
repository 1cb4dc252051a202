#pragma once

#include "tcm/field.hpp"

namespace tcm {

/// Forward transform. Coefficients are normalized as c_k = (1/N) * DFT so
/// that Parseval holds in the form
///   sum_x |f|^2 * cell_volume == sum_k |c_k|^2 * volume
/// and l2_norm is representation independent.
Field to_spectral(const Field& f);
VectorField to_spectral(const VectorField& f);

/// Inverse transform, f(x) = sum_k c_k exp(i k.x). Throws if the input
/// violates Hermitian symmetry beyond round-off (the reconstructed field
/// would not be real).
Field to_physical(const Field& f);
VectorField to_physical(const VectorField& f);

/// Convenience: convert to the requested representation (copy if already
/// there).
Field with_rep(const Field& f, Rep rep);
VectorField with_rep(const VectorField& f, Rep rep);

namespace detail {

/// Fused solver-internal transform paths. These skip the Hermitian-symmetry
/// check of to_physical: they are only valid on spectra that are Hermitian
/// by construction (transform outputs evolved through real-symbol
/// multipliers), which the round-trip and energy tests pin down.
Field inverse_transform_trusted(const Field& spec);
/// d_axis via the spectral symbol, transformed to physical in one pass.
Field inverse_derivative(const Field& spec, int axis);
/// acc += forward(prod) * (i k_axis), fused (acc spectral, prod physical).
void add_forward_derivative(Field& acc, const Field& prod, int axis);

} // namespace detail

} // namespace tcm
