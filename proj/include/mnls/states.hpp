#pragma once

#include <cstdint>

#include "mnls/field.hpp"

namespace mnls {

/// amplitude * exp(-|x - center|^2 / (2 width^2)), optional outgoing
/// quadratic phase exp(i chirp |x|^2) and plane-wave phase exp(i k.x).
ComplexField gaussian_state(const Grid& g, double amplitude = 1.0, double width = 1.0,
                            Vec3 center = {}, double chirp = 0.0, Vec3 phase_k = {});

ComplexField plane_wave_state(const Grid& g, Vec3 mode_vec);

/// Deterministic smooth random state: random low-mode trigonometric
/// polynomial (|m| <= max_mode per axis, 1/(1+|m|^2)^2 falloff) under a
/// Gaussian envelope so the field decays toward the box edge.
ComplexField random_smooth_state(const Grid& g, std::uint64_t seed, double amplitude = 1.0,
                                 double envelope_width = 0.0, int max_mode = 3);

/// Random band-limited field without an envelope (periodic test data).
ComplexField random_band_limited(const Grid& g, std::uint64_t seed, int max_mode);

}  // namespace mnls
