#pragma once

#include "satrestore/core/image.hpp"
#include "satrestore/fuse/weights.hpp"

namespace satrestore {

struct FusionOptions {
    /// Levels added on top of floor(log2(min(W, H))).
    int extra_levels = 1;
    QualityWeightOptions quality{};
};

/// Multi-scale exposure fusion of dark, input and bright images: Laplacian
/// pyramids of the images blended with Gaussian pyramids of the normalized
/// weights, collapsed, clamped and quantized. Images must be at least 8x8.
LdrImage mef_fuse(const LdrImage& z0, const LdrImage& z1, const LdrImage& z2, const FusionOptions& opts = {});

/// Unquantized fusion result on the 0..255 scale.
FloatImage mef_fuse_float(const LdrImage& z0, const LdrImage& z1, const LdrImage& z2, const FusionOptions& opts = {});

}  // namespace satrestore
