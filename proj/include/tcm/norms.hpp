#pragma once

#include "tcm/field.hpp"

namespace tcm {

/// Which integral sits outermost in the mixed norm. vertical_outer is
/// L^q in x3 of the horizontal L^p norms (the L^q_v(L^p_h) family);
/// horizontal_outer is L^p over (x1,x2) of the vertical L^q norms
/// (the L^p_h(L^q_v) family).
enum class MixedOrder { horizontal_outer, vertical_outer };

/// L2 norm; representation independent (quadrature in physical space,
/// Parseval in spectral space). Vector fields use the Euclidean pointwise
/// magnitude.
double l2_norm(const Field& f);
double l2_norm(const VectorField& f);

/// Lp norm by uniform-grid quadrature; requires the physical
/// representation. p may be infinity (max norm); throws for p < 1.
double lp_norm(const Field& f, double p);
double lp_norm(const VectorField& f, double p);

/// Iterated mixed norm with exponent p over the horizontal plane and q
/// along x3; either exponent may be infinity. Physical representation only.
double anisotropic_mixed_norm(const Field& f, double p_h, double q_v,
                              MixedOrder order = MixedOrder::horizontal_outer);

/// H^s norm, weight (1+|k|^2)^(s/2); homogeneous variant uses |k|^s
/// (realizing lambda^s). Spectral representation required.
double sobolev_norm(const Field& f, double s, bool homogeneous = false);
double sobolev_norm(const VectorField& f, double s, bool homogeneous = false);

/// Anisotropic H^{s,s'} norm, weight (1+k1^2+k2^2)^(s/2) (1+k3^2)^(s'/2).
double anisotropic_sobolev_norm(const Field& f, double s, double sp);
double anisotropic_sobolev_norm(const VectorField& f, double s, double sp);

/// L2 inner products. Physical inputs use quadrature, spectral inputs the
/// Parseval pairing; both arguments must share grid and representation.
double l2_inner(const Field& a, const Field& b);
double l2_inner(const VectorField& a, const VectorField& b);

} // namespace tcm
