#pragma once

#include <cstdint>

#include "tcm/field.hpp"

namespace tcm {

/// Deterministic band-limited Gaussian field: independent unit-variance
/// complex coefficients on every mode with |m_j| <= max_mode, then
/// Hermitian-symmetrized so the field is real. Returned in the spectral
/// representation. Requires 3*max_mode <= n_j on all axes.
Field random_scalar_field(const GridPtr& grid, int max_mode,
                          std::uint64_t seed);

/// Vector variant; with solenoidal set the result is Leray-projected.
VectorField random_vector_field(const GridPtr& grid, int max_mode,
                                std::uint64_t seed, bool solenoidal = false);

} // namespace tcm
