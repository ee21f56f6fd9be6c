#pragma once

#include "satrestore/core/image.hpp"

namespace satrestore {

/// Reported in place of +inf when the images are identical.
inline constexpr double kPsnrCap = 99.0;

/// Mean squared error on [0,1]-scaled samples (level / 255).
double mse(const LdrImage& a, const LdrImage& b);
/// Mean squared error of images already on the [0,1] scale.
double mse(const FloatImage& a, const FloatImage& b);
/// 10 log10(1 / mse), capped at kPsnrCap.
double psnr(const LdrImage& a, const LdrImage& b);
double psnr_from_mse(double mse) noexcept;

struct SsimOptions {
    int window = 8;
    double k1 = 0.01;
    double k2 = 0.03;
};

/// Single-scale SSIM with a uniform window slid at stride 1 over [0,1]-scaled
/// samples (population statistics), averaged over window positions and then
/// over channels.
double ssim(const LdrImage& a, const LdrImage& b, const SsimOptions& opts = {});
double ssim(const FloatImage& a, const FloatImage& b, const SsimOptions& opts = {});

/// Summed-area table over one channel of an image, for O(1) window sums.
class IntegralImage {
public:
    IntegralImage(const FloatImage& img, int channel, bool squared = false);
    IntegralImage(const FloatImage& a, const FloatImage& b, int channel);  ///< products a * b

    /// Sum over [x, x + w) x [y, y + h).
    double sum(int x, int y, int w, int h) const noexcept;

private:
    void build(const FloatImage& a, const FloatImage* b, int channel, bool squared);
    int width_ = 0;
    std::vector<double> table_;
};

}  // namespace satrestore
