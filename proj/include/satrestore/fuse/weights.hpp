#pragma once

#include <array>

#include "satrestore/core/image.hpp"

namespace satrestore {

struct QualityWeightOptions {
    double sigma = 0.2;     ///< well-exposedness Gauss curve width on [0,1] levels
    double floor = 1e-12;   ///< added to every weight
};

/// Contrast |Laplacian of luma| x saturation (std of R,G,B) x well-exposedness
/// (product over channels of a Gauss curve around 0.5), all on [0,1]-scaled
/// samples, plus the floor. Single channel.
FloatImage quality_weight(const LdrImage& img, const QualityWeightOptions& opts = {});

/// Constant amplification of the input image's weight.
inline constexpr double kInputAmplification = 2.0;

struct WeightMaps {
    std::array<FloatImage, 3> w;
    bool normalized = false;
};

/// W0 = q(z0), W1 = 2 q(z1), W2 = q(z2); normalized to sum to 1 per pixel when `normalize`.
WeightMaps combined_weights(const LdrImage& z0, const LdrImage& z1, const LdrImage& z2, bool normalize = true,
                            const QualityWeightOptions& opts = {});

}  // namespace satrestore
