#pragma once

#include <vector>

#include "satrestore/core/image.hpp"

namespace satrestore {

/// Levels from finest (0) to coarsest.
using Pyramid = std::vector<FloatImage>;

/// 5-tap binomial blur with reflect-101 borders, then keep every other sample
/// (output size ceil(n / 2)).
FloatImage pyr_down(const FloatImage& img);
/// Zero-insertion upsampling to width x height followed by the same blur, times 4.
FloatImage pyr_up(const FloatImage& img, int width, int height);

/// Number of levels until the coarsest level is 1 pixel on its short side.
int max_pyramid_levels(int width, int height);
/// floor(log2(min(W, H))) + extra, clamped to [1, max_pyramid_levels].
int pyramid_levels(int width, int height, int extra = 1);

Pyramid gaussian_pyramid(const FloatImage& img, int levels);
Pyramid laplacian_pyramid(const FloatImage& img, int levels);
FloatImage collapse(const Pyramid& laplacian);

}  // namespace satrestore
