#include "satrestore/objective/losses.hpp"

#include <algorithm>
#include <cmath>

#include "satrestore/core/error.hpp"

namespace satrestore {

double restoration_weight(double base_level, double nu) noexcept {
    return base_level >= nu ? 1.0 : 1.0 / (nu - base_level);
}

double restoration_loss(const LdrImage& target, const LdrImage& base, const FloatImage& residual, double nu,
                        Reduction reduction) {
    require_same_shape(target, base, "restoration_loss");
    require_same_shape(target, residual, "restoration_loss");
    const auto t = target.data();
    const auto z = base.data();
    const auto r = residual.data();
    double sum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double err = static_cast<double>(t[i]) - r[i] - static_cast<double>(z[i]);
        sum += restoration_weight(z[i], nu) * err * err;
    }
    return reduction == Reduction::Mean ? sum / static_cast<double>(t.size()) : sum;
}

double color_angle(const double* a, const double* b) noexcept {
    const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    const double cx = a[1] * b[2] - a[2] * b[1];
    const double cy = a[2] * b[0] - a[0] * b[2];
    const double cz = a[0] * b[1] - a[1] * b[0];
    const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
    if (cross == 0.0 && dot == 0.0) return 0.0;
    return std::atan2(cross, dot);
}

double color_angle_loss(const FloatImage& target, const FloatImage& pred) {
    require_same_shape(target, pred, "color_angle_loss");
    if (target.channels() != 3) throw ShapeError("color_angle_loss expects RGB images");
    double sum = 0.0;
    for (int y = 0; y < target.height(); ++y) {
        for (int x = 0; x < target.width(); ++x) {
            const double* t = target.pixel(x, y);
            const double* p = pred.pixel(x, y);
            const double clamped[3] = {std::max(p[0], 0.0), std::max(p[1], 0.0), std::max(p[2], 0.0)};
            sum += color_angle(t, clamped);
        }
    }
    return sum;
}

double color_angle_loss(const LdrImage& target, const FloatImage& pred) {
    return color_angle_loss(to_float(target), pred);
}

double feature_loss(const FloatImage& a, const FloatImage& b, const FeatureExtractor& fx, FeatureStage stage) {
    require_same_shape(a, b, "feature_loss");
    const FeatureMap fa = fx.extract(a, stage);
    const FeatureMap fb = fx.extract(b, stage);
    const auto da = fa.data();
    const auto db = fb.data();
    double sum = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) {
        const double d = da[i] - db[i];
        sum += d * d;
    }
    return sum / static_cast<double>(da.size());
}

double total_loss(const LossComponents& parts, const LossWeights& weights) noexcept {
    return parts.restoration + weights.color * parts.color + weights.feature * parts.feature;
}

LossComponents loss_components(const LdrImage& target, const LdrImage& base, const FloatImage& residual,
                               const FeatureExtractor& fx, FeatureStage stage, const LossWeights& weights,
                               Reduction reduction) {
    require_same_shape(target, base, "loss_components");
    require_same_shape(target, residual, "loss_components");
    FloatImage enhanced = to_float(base);
    auto e = enhanced.data();
    const auto r = residual.data();
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += r[i];

    const FloatImage t = to_float(target);
    LossComponents parts;
    parts.restoration = restoration_loss(target, base, residual, weights.nu, reduction);
    parts.color = color_angle_loss(t, enhanced);
    parts.feature = feature_loss(t, enhanced, fx, stage);
    return parts;
}

double total_loss(const LdrImage& target, const LdrImage& base, const FloatImage& residual,
                  const FeatureExtractor& fx, FeatureStage stage, const LossWeights& weights, Reduction reduction) {
    return total_loss(loss_components(target, base, residual, fx, stage, weights, reduction), weights);
}

}  // namespace satrestore
