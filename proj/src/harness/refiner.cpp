#include "satrestore/harness/refiner.hpp"

#include <cmath>

#include "satrestore/core/error.hpp"

namespace satrestore {

FloatImage IdentityRefiner::refine(const LdrImage&, const LdrImage& z_init, const Mask&,
                                   const RefinerParams&) const {
    return FloatImage(z_init.width(), z_init.height(), z_init.channels(), 0.0);
}

FloatImage GainBiasRefiner::refine(const LdrImage&, const LdrImage& z_init, const Mask&,
                                   const RefinerParams& params) const {
    if (params.ground_truth == nullptr) throw Error("gain-bias refiner needs a ground-truth image");
    const LdrImage& gt = *params.ground_truth;
    require_same_shape(z_init, gt, "gain-bias refiner");
    const int ch = z_init.channels();
    FloatImage out(z_init.width(), z_init.height(), ch, 0.0);
    const double n = static_cast<double>(z_init.pixel_count());
    for (int c = 0; c < ch; ++c) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int y = 0; y < z_init.height(); ++y)
            for (int x = 0; x < z_init.width(); ++x) {
                const double a = z_init.at(x, y, c);
                const double b = gt.at(x, y, c);
                sx += a;
                sy += b;
                sxx += a * a;
                sxy += a * b;
            }
        const double var = sxx - sx * sx / n;
        double gain = 1.0;
        double bias = (sy - sx) / n;
        if (var > 1e-9 * n) {
            gain = (sxy - sx * sy / n) / var;
            bias = (sy - gain * sx) / n;
        }
        for (int y = 0; y < z_init.height(); ++y)
            for (int x = 0; x < z_init.width(); ++x) {
                const double a = z_init.at(x, y, c);
                out.at(x, y, c) = (gain - 1.0) * a + bias;
            }
    }
    return out;
}

std::unique_ptr<Refiner> make_refiner(const std::string& name) {
    if (name == "identity") return std::make_unique<IdentityRefiner>();
    if (name == "gain-bias") return std::make_unique<GainBiasRefiner>();
    throw Error("unknown refiner '" + name + "' (expected identity or gain-bias)");
}

std::vector<std::string> refiner_names() { return {"identity", "gain-bias"}; }

LdrImage apply_residual(const LdrImage& z_init, const FloatImage& residual) {
    if (residual.width() != z_init.width() || residual.height() != z_init.height() ||
        residual.channels() != z_init.channels()) {
        throw ShapeError("refiner residual shape does not match the initial image");
    }
    LdrImage out(z_init.width(), z_init.height(), z_init.channels(), 0);
    const auto a = z_init.data();
    const auto r = residual.data();
    auto o = out.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!std::isfinite(r[i])) throw Error("refiner residual is not finite");
        o[i] = quantize(a[i] + r[i]);
    }
    return out;
}

}  // namespace satrestore
