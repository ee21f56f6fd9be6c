#include "satrestore/fuse/mef_fusion.hpp"

#include <algorithm>

#include "satrestore/core/error.hpp"
#include "satrestore/fuse/pyramid.hpp"

namespace satrestore {

FloatImage mef_fuse_float(const LdrImage& z0, const LdrImage& z1, const LdrImage& z2, const FusionOptions& opts) {
    require_same_shape(z0, z1, "mef_fuse");
    require_same_shape(z1, z2, "mef_fuse");
    if (z1.width() < 8 || z1.height() < 8) throw ShapeError("mef_fuse: images must be at least 8x8");

    const int levels = pyramid_levels(z1.width(), z1.height(), opts.extra_levels);
    const WeightMaps weights = combined_weights(z0, z1, z2, true, opts.quality);
    const std::array<const LdrImage*, 3> images{&z0, &z1, &z2};

    Pyramid blended;
    for (int k = 0; k < 3; ++k) {
        FloatImage scaled = to_float(*images[k]);
        for (double& v : scaled.data()) v /= 255.0;
        const Pyramid lap = laplacian_pyramid(scaled, levels);
        const Pyramid wp = gaussian_pyramid(weights.w[k], levels);
        if (blended.empty()) {
            for (const auto& l : lap) blended.emplace_back(l.width(), l.height(), l.channels(), 0.0);
        }
        for (int l = 0; l < levels; ++l) {
            FloatImage& dst = blended[l];
            for (int y = 0; y < dst.height(); ++y)
                for (int x = 0; x < dst.width(); ++x) {
                    const double wv = wp[l].at(x, y, 0);
                    for (int c = 0; c < 3; ++c) dst.at(x, y, c) += wv * lap[l].at(x, y, c);
                }
        }
    }
    FloatImage out = collapse(blended);
    for (double& v : out.data()) v = std::clamp(v, 0.0, 1.0) * 255.0;
    return out;
}

LdrImage mef_fuse(const LdrImage& z0, const LdrImage& z1, const LdrImage& z2, const FusionOptions& opts) {
    return quantize(mef_fuse_float(z0, z1, z2, opts));
}

}  // namespace satrestore
