#pragma once

#include <array>

#include "satrestore/core/image.hpp"

namespace satrestore {

/// Exposure times of the dark, input and bright images plus the 8-bit
/// reliability thresholds used on the input image.
struct ExposureConfig {
    double dt0 = 0.25;
    double dt1 = 1.0;
    double dt2 = 4.0;
    int xi_u = 250;
    int xi_l = 200;

    /// dt0 = dt1 / ratio, dt2 = dt1 * ratio.
    static ExposureConfig from_ratio(double dt1, double ratio);

    /// Throws Error unless dt0 < dt1 < dt2 (all > 0) and 0 < xi_l < xi_u <= 255.
    void validate() const;
};

/// Three captures of one scene: dark (index 0), input (1), bright (2).
struct ExposureTriplet {
    enum class Role { Synthetic, GroundTruth };

    std::array<LdrImage, 3> images;
    std::array<double, 3> times{0.25, 1.0, 4.0};
    Role role = Role::GroundTruth;

    const LdrImage& dark() const noexcept { return images[0]; }
    const LdrImage& input() const noexcept { return images[1]; }
    const LdrImage& bright() const noexcept { return images[2]; }

    /// Throws Error unless times are strictly increasing and positive, and all images share a shape.
    void validate() const;
};

}  // namespace satrestore
