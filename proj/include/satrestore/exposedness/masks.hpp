#pragma once

#include "satrestore/core/image.hpp"

namespace satrestore {

/// Per-channel reliability of the input for darkening (m0) and brightening (m2).
struct ExposednessMasks {
    Mask m0;  ///< 0 where the input channel is >= xi_u
    Mask m2;  ///< 0 where the input channel is <= xi_l
};

ExposednessMasks compute_masks(const LdrImage& z1, int xi_u, int xi_l);

/// Elementwise product; masked-out samples become exactly 0.
LdrImage gate(const LdrImage& synthetic, const Mask& mask);
FloatImage gate(const FloatImage& synthetic, const Mask& mask);

}  // namespace satrestore
