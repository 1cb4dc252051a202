#pragma once

#include "tcm/field.hpp"

namespace tcm {

enum class DealiasRule { two_thirds };

/// Projects onto (discretely) divergence-free fields: per mode
/// w - k (k.w)/|k|^2, using the derivative-convention wavenumbers, with the
/// k = 0 mode (and pure-Nyquist modes, whose derivative symbol vanishes)
/// passed through unchanged.
VectorField leray_project(const VectorField& w);

/// Zeroes every coefficient with 3*|m_j| > n_j on any axis (the 2/3 rule);
/// this always removes the Nyquist modes.
Field dealias(const Field& f, DealiasRule rule = DealiasRule::two_thirds);
VectorField dealias(const VectorField& f,
                    DealiasRule rule = DealiasRule::two_thirds);

/// True if every retained coefficient of the rule survives untouched, i.e.
/// the field is already band-limited.
bool is_dealiased(const Field& f, double tol_rel = 0.0);

/// Spectral gradient / divergence (derivative-convention wavenumbers).
VectorField gradient(const Field& f);
Field divergence(const VectorField& f);

/// ||div w||_2 / ||w||_2 in the spectral metric; 0 for a zero field.
double relative_divergence(const VectorField& w);

/// Same coefficients on a grid refined by an integer factor per axis
/// (trigonometric interpolation). Requires the input's Nyquist modes to be
/// empty, which is guaranteed for dealiased fields.
Field refine(const Field& f, int factor = 2);
VectorField refine(const VectorField& f, int factor = 2);

} // namespace tcm
