#include "satrestore/fuse/weights.hpp"

#include <algorithm>
#include <cmath>

#include "satrestore/core/error.hpp"

namespace satrestore {

FloatImage quality_weight(const LdrImage& img, const QualityWeightOptions& opts) {
    if (img.channels() != 3) throw ShapeError("quality_weight expects an RGB image");
    const int w = img.width();
    const int h = img.height();

    FloatImage gray(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const std::uint8_t* p = img.pixel(x, y);
            gray.at(x, y, 0) = luma(p[0], p[1], p[2]) / 255.0;
        }

    const double inv_two_sigma_sq = 1.0 / (2.0 * opts.sigma * opts.sigma);
    FloatImage out(w, h, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            // 4-neighbour Laplacian with replicated borders.
            const auto g = [&](int xx, int yy) {
                return gray.at(std::clamp(xx, 0, w - 1), std::clamp(yy, 0, h - 1), 0);
            };
            const double contrast =
                std::abs(g(x - 1, y) + g(x + 1, y) + g(x, y - 1) + g(x, y + 1) - 4.0 * g(x, y));

            const std::uint8_t* p = img.pixel(x, y);
            const double r = p[0] / 255.0;
            const double gg = p[1] / 255.0;
            const double b = p[2] / 255.0;
            const double mean = (r + gg + b) / 3.0;
            const double saturation =
                std::sqrt(((r - mean) * (r - mean) + (gg - mean) * (gg - mean) + (b - mean) * (b - mean)) / 3.0);

            double exposed = 1.0;
            for (const double v : {r, gg, b}) exposed *= std::exp(-(v - 0.5) * (v - 0.5) * inv_two_sigma_sq);

            out.at(x, y, 0) = contrast * saturation * exposed + opts.floor;
        }
    }
    return out;
}

WeightMaps combined_weights(const LdrImage& z0, const LdrImage& z1, const LdrImage& z2, bool normalize,
                            const QualityWeightOptions& opts) {
    require_same_shape(z0, z1, "combined_weights");
    require_same_shape(z1, z2, "combined_weights");
    WeightMaps maps{{quality_weight(z0, opts), quality_weight(z1, opts), quality_weight(z2, opts)}, normalize};
    for (double& v : maps.w[1].data()) v *= kInputAmplification;
    if (!normalize) return maps;
    auto a = maps.w[0].data();
    auto b = maps.w[1].data();
    auto c = maps.w[2].data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double s = a[i] + b[i] + c[i];
        a[i] /= s;
        b[i] /= s;
        c[i] /= s;
    }
    return maps;
}

}  // namespace satrestore
