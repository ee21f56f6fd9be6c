#include "satrestore/objective/feature_extractor.hpp"

#include <algorithm>
#include <limits>

#include "satrestore/core/error.hpp"

namespace satrestore {

namespace {

FeatureMap convolve5x5(const FeatureMap& x, const std::vector<double>& k) {
    FeatureMap out(x.channels(), x.height(), x.width());
    const int h = x.height();
    const int w = x.width();
    for (int c = 0; c < x.channels(); ++c) {
        for (int y = 0; y < h; ++y) {
            for (int xx = 0; xx < w; ++xx) {
                double acc = 0.0;
                for (int ky = 0; ky < 5; ++ky) {
                    const int sy = y + ky - 2;
                    if (sy < 0 || sy >= h) continue;
                    for (int kx = 0; kx < 5; ++kx) {
                        const int sx = xx + kx - 2;
                        if (sx < 0 || sx >= w) continue;
                        acc += k[ky * 5 + kx] * x.at(c, sy, sx);
                    }
                }
                out.at(c, y, xx) = acc;
            }
        }
    }
    return out;
}

}  // namespace

FeatureMap max_pool_2x2(const FeatureMap& x) {
    const int h = (x.height() + 1) / 2;
    const int w = (x.width() + 1) / 2;
    FeatureMap out(x.channels(), h, w);
    for (int c = 0; c < x.channels(); ++c) {
        for (int y = 0; y < h; ++y) {
            for (int xx = 0; xx < w; ++xx) {
                double m = -std::numeric_limits<double>::infinity();
                for (int dy = 0; dy < 2; ++dy) {
                    for (int dx = 0; dx < 2; ++dx) {
                        const int sy = 2 * y + dy;
                        const int sx = 2 * xx + dx;
                        if (sy < x.height() && sx < x.width()) m = std::max(m, x.at(c, sy, sx));
                    }
                }
                out.at(c, y, xx) = m;
            }
        }
    }
    return out;
}

KernelBankExtractor::KernelBankExtractor(int scales) : scales_(scales) {
    if (scales < 1) throw Error("KernelBankExtractor: scales must be >= 1");
    std::vector<double> identity(25, 0.0);
    identity[12] = 1.0;

    const double b[5] = {1.0, 4.0, 6.0, 4.0, 1.0};
    std::vector<double> gauss(25);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) gauss[i * 5 + j] = b[i] * b[j] / 256.0;

    std::vector<double> dx(25, 0.0);
    dx[12 - 1] = -0.5;
    dx[12 + 1] = 0.5;
    std::vector<double> dy(25, 0.0);
    dy[12 - 5] = -0.5;
    dy[12 + 5] = 0.5;

    bank_ = {identity, gauss, dx, dy};
}

std::string KernelBankExtractor::stage_name(FeatureStage stage) const {
    static const char* names[] = {"identity", "gaussian5", "dx", "dy"};
    if (stage.kernel < 1 || stage.kernel > kernels()) return "invalid";
    return std::string(names[stage.kernel - 1]) + "@" + std::to_string(stage.scale);
}

FeatureMap KernelBankExtractor::extract(const FloatImage& image, FeatureStage stage) const {
    if (stage.scale < 1 || stage.scale > scales_ || stage.kernel < 1 || stage.kernel > kernels()) {
        throw Error("KernelBankExtractor: no stage (" + std::to_string(stage.scale) + "," +
                    std::to_string(stage.kernel) + ")");
    }
    FeatureMap x = to_feature_map(image);
    for (int s = 1; s < stage.scale; ++s) x = max_pool_2x2(x);
    return convolve5x5(x, bank_[stage.kernel - 1]);
}

}  // namespace satrestore
