#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "satrestore/core/image.hpp"

namespace satrestore {

/// One additive radiance component. Positions are fractions of the image
/// width/height, `scale` is a fraction of min(W, H).
struct SceneComponent {
    enum class Kind {
        /// Gaussian with sigma = scale, tapered to exactly 0 at 3 sigma.
        Blob,
        /// Geometric ramp along `angle`: peak * low^(1 - t), t running 0..1
        /// across a band of width `scale` centred on `center`.
        Ramp,
        /// Flat-topped spot exp(-(r / scale)^8).
        Highlight,
    };

    Kind kind = Kind::Blob;
    double cx = 0.5;
    double cy = 0.5;
    double scale = 0.1;
    std::array<double, 3> peak{1.0, 1.0, 1.0};
    double angle = 0.0;  ///< ramps only, radians
    double low = 1e-3;   ///< ramps only, fraction of peak at t = 0
};

struct SceneSpec {
    int width = 512;
    int height = 512;
    std::uint64_t seed = 1;
    std::vector<SceneComponent> components;
    /// Target max/min sample ratio used by random_scene.
    double dynamic_range = 1e4;
};

/// Sum of the components; an empty list gives an all-zero image.
RadianceImage generate_scene(const SceneSpec& spec);

/// Seeded scene with a geometric background ramp, textured blobs and
/// saturating highlight spots. The ramp floor is tuned so that the generated
/// max/min sample ratio lands within a factor 2 of `dynamic_range`.
SceneSpec random_scene(std::uint64_t seed, int width, int height, double dynamic_range = 1e4);

/// max sample / min sample (infinite when some sample is 0).
double dynamic_range_of(const RadianceImage& img);

}  // namespace satrestore
