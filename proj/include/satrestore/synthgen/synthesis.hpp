#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "satrestore/core/crf.hpp"
#include "satrestore/core/exposure.hpp"
#include "satrestore/core/image.hpp"
#include "satrestore/synthgen/imf.hpp"

namespace satrestore {

/// Shape of the reliability weight on the transition band.
///   Verbatim: 128 - 3h^2 + 2h^3 (jumps to 0 at the unreliable threshold).
///   Smooth:   128 * (3h^2 - 2h^3) (continuous at both thresholds).
enum class WeightMode { Verbatim, Smooth };

WeightMode parse_weight_mode(const std::string& name);
const char* to_string(WeightMode mode) noexcept;

/// Dark-side weight in [0, 128]: 0 above xi_u, 128 at or below xi_l, banded
/// in (xi_l, xi_u] with h = (xi_u - z) / (xi_u - xi_l).
double reliability_weight(double z, double xi_u, double xi_l, WeightMode mode) noexcept;

/// Bright-side mirror: 0 below xi_lo, 128 at or above xi_hi, banded in
/// [xi_lo, xi_hi) with h = (z - xi_lo) / (xi_hi - xi_lo).
double brightening_weight(double z, double xi_lo, double xi_hi, WeightMode mode) noexcept;

using Rgb8 = std::array<std::uint8_t, 3>;

/// Per-pixel ratio minimizing sum_l w(z_l) (imf(z_l) - ratio * z_l)^2 with
/// the dark-side weights. When every weighted channel is zero the ratio falls
/// back to the mean of imf(xi_u) / xi_u; for a black pixel it is the mean of imf(1).
double fixed_ratio(const Rgb8& pixel, const ImfLut& imf, int xi_u, int xi_l, WeightMode mode) noexcept;

/// Same as fixed_ratio with the bright-side weights; falls back to imf(xi_lo) / xi_lo.
double fixed_ratio_bright(const Rgb8& pixel, const ImfLut& imf, int xi_lo, int xi_hi, WeightMode mode) noexcept;

struct SynthesisOptions {
    WeightMode mode = WeightMode::Verbatim;
    /// Bright-side thresholds: a pixel is mapped through the IMF when every channel is >= bright_xi_l.
    int bright_xi_l = 5;
    int bright_xi_u = 55;
};

struct SynthesisResult {
    LdrImage image;
    /// 1 where the fixed-ratio path produced the pixel (single channel).
    Mask fixed_ratio_used;
    /// Ratio applied at fixed-ratio pixels, 0 elsewhere (single channel).
    FloatImage ratio;
};

/// Dark synthetic image: IMF where every channel is <= xi_u, fixed ratio otherwise.
SynthesisResult synthesize_dark_detailed(const LdrImage& z1, const Crf& crf, const ExposureConfig& cfg,
                                         const SynthesisOptions& opts = {});
/// Bright synthetic image: IMF where every channel is >= bright_xi_l, fixed ratio otherwise.
SynthesisResult synthesize_bright_detailed(const LdrImage& z1, const Crf& crf, const ExposureConfig& cfg,
                                           const SynthesisOptions& opts = {});

LdrImage synthesize_dark(const LdrImage& z1, const Crf& crf, const ExposureConfig& cfg,
                         WeightMode mode = WeightMode::Verbatim);
LdrImage synthesize_bright(const LdrImage& z1, const Crf& crf, const ExposureConfig& cfg,
                           WeightMode mode = WeightMode::Verbatim);

}  // namespace satrestore
