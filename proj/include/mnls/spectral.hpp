#pragma once

#include "mnls/field.hpp"

namespace mnls {

/// Exact derivative of the trigonometric interpolant along each axis; the
/// Nyquist mode of the differentiated axis is zeroed.
VectorField spectral_gradient(const ComplexField& f);
ComplexField spectral_derivative(const ComplexField& f, int axis);
ComplexField spectral_laplacian(const ComplexField& f);

RealField spectral_derivative(const RealField& f, int axis);
RealVectorField spectral_gradient(const RealField& f);
RealField spectral_divergence(const RealVectorField& a);

/// Spectral multiplier |k|^s; the k = 0 mode maps to 0 for s != 0 and is
/// preserved for s = 0. Rejects s <= -3 (symbol not integrable in 3D).
ComplexField fractional_gradient_power(const ComplexField& f, double s);

/// 2/3-rule dealiasing: zero every mode with |m_axis| > N/3 on any axis.
ComplexField dealias_two_thirds(const ComplexField& f);

/// Leray step in spectral space: a <- a - grad lap^{-1} (div a); the zero mode
/// is untouched. Nyquist modes use the same zeroed-derivative convention as
/// spectral_gradient, so the projected field is divergence-free for
/// spectral_divergence exactly.
RealVectorField leray_project(const RealVectorField& a);

}  // namespace mnls
