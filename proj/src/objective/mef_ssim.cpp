#include "satrestore/objective/mef_ssim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "satrestore/core/error.hpp"

namespace satrestore {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Sums of `a * b` (or `a` when b is null) over every win x win window, computed
// directly rather than from prefix sums to keep cancellation local.
std::vector<double> window_sums(const std::vector<double>& a, const std::vector<double>* b, int w, int h, int win) {
    const int nx = w - win + 1;
    const int ny = h - win + 1;
    std::vector<double> rows(static_cast<std::size_t>(nx) * h);
    for (int y = 0; y < h; ++y) {
        const double* pa = a.data() + static_cast<std::size_t>(y) * w;
        const double* pb = b ? b->data() + static_cast<std::size_t>(y) * w : nullptr;
        for (int x = 0; x < nx; ++x) {
            double s = 0.0;
            for (int k = 0; k < win; ++k) s += pb ? pa[x + k] * pb[x + k] : pa[x + k];
            rows[static_cast<std::size_t>(y) * nx + x] = s;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(nx) * ny);
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            double s = 0.0;
            for (int k = 0; k < win; ++k) s += rows[static_cast<std::size_t>(y + k) * nx + x];
            out[static_cast<std::size_t>(y) * nx + x] = s;
        }
    }
    return out;
}

}  // namespace

FloatImage luma_plane(const LdrImage& img) {
    if (img.channels() != 3) throw ShapeError("luma_plane expects an RGB image");
    FloatImage out(img.width(), img.height(), 1);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const std::uint8_t* p = img.pixel(x, y);
            out.at(x, y, 0) = luma(p[0], p[1], p[2]);
        }
    }
    return out;
}

MefSsimResult mef_ssim_detailed(const LdrImage& fused, std::span<const LdrImage> refs, const MefSsimOptions& opts) {
    if (refs.empty()) throw Error("mef_ssim: empty reference set");
    for (const auto& r : refs) require_same_shape(fused, r, "mef_ssim");
    const int w = fused.width();
    const int h = fused.height();
    const int win = opts.window;
    if (win < 2 || w < win || h < win) throw ShapeError("mef_ssim: image smaller than the window");

    const int k_count = static_cast<int>(refs.size());
    const double n = static_cast<double>(win) * win;
    const double c2 = (opts.k2 * 255.0) * (opts.k2 * 255.0);

    auto flatten = [](const FloatImage& img) { return std::vector<double>(img.data().begin(), img.data().end()); };
    std::vector<std::vector<double>> x;
    x.reserve(refs.size());
    for (const auto& r : refs) x.push_back(flatten(luma_plane(r)));
    const std::vector<double> f = flatten(luma_plane(fused));

    // Window sums: means, pairwise inner products, products with the fused image.
    std::vector<std::vector<double>> sum_x, sum_xf;
    std::vector<std::vector<std::vector<double>>> sum_xx(k_count, std::vector<std::vector<double>>(k_count));
    for (int k = 0; k < k_count; ++k) {
        sum_x.push_back(window_sums(x[k], nullptr, w, h, win));
        sum_xf.push_back(window_sums(x[k], &f, w, h, win));
        for (int l = k; l < k_count; ++l) sum_xx[k][l] = window_sums(x[k], &x[l], w, h, win);
    }
    const auto sum_f = window_sums(f, nullptr, w, h, win);
    const auto sum_ff = window_sums(f, &f, w, h, win);

    const int nx = w - win + 1;
    const int ny = h - win + 1;
    MefSsimResult result{0.0, FloatImage(nx, ny, 1)};

    std::vector<double> mu(k_count), strength(k_count), norm(k_count), weight(k_count), coef(k_count);
    std::vector<double> gram(static_cast<std::size_t>(k_count) * k_count);
    double total = 0.0;
    for (int y = 0; y < ny; ++y) {
        for (int xx = 0; xx < nx; ++xx) {
            const std::size_t idx = static_cast<std::size_t>(y) * nx + xx;
            for (int k = 0; k < k_count; ++k) mu[k] = sum_x[k][idx] / n;
            for (int k = 0; k < k_count; ++k) {
                for (int l = k; l < k_count; ++l) {
                    const double g = sum_xx[k][l][idx] - n * mu[k] * mu[l];
                    gram[k * k_count + l] = gram[l * k_count + k] = g;
                }
            }

            double denom = 0.0;
            double max_strength = 0.0;
            for (int k = 0; k < k_count; ++k) {
                norm[k] = std::sqrt(std::max(gram[k * k_count + k], 0.0));
                strength[k] = norm[k] + opts.strength_offset;
                denom += norm[k];
                max_strength = std::max(max_strength, strength[k]);
            }
            double sum_sq = 0.0;
            for (double g : gram) sum_sq += g;
            double consistency = (std::sqrt(std::max(sum_sq, 0.0)) + kEps) / (denom + kEps);
            consistency = std::clamp(consistency, kEps, 1.0 - kEps);
            const double p = std::min(std::tan(std::numbers::pi / 2.0 * consistency), opts.p_cap);

            double wsum = 0.0;
            for (int k = 0; k < k_count; ++k) {
                weight[k] = std::pow(strength[k] / win, p) + kEps;
                wsum += weight[k];
            }
            for (int k = 0; k < k_count; ++k) coef[k] = weight[k] / wsum / strength[k];

            // Desired patch = coef-weighted sum of centred references, rescaled to max_strength.
            double s_norm_sq = 0.0;
            for (int k = 0; k < k_count; ++k)
                for (int l = 0; l < k_count; ++l) s_norm_sq += coef[k] * coef[l] * gram[k * k_count + l];
            const double mu_f = sum_f[idx] / n;
            const double var_f = sum_ff[idx] / n - mu_f * mu_f;

            double var_d = 0.0;
            double cov = 0.0;
            if (s_norm_sq > 0.0) {
                const double scale = max_strength / std::sqrt(s_norm_sq);
                double inner = 0.0;
                for (int k = 0; k < k_count; ++k) inner += coef[k] * (sum_xf[k][idx] - n * mu[k] * mu_f);
                var_d = max_strength * max_strength / n;
                cov = scale * inner / n;
            }
            const double q = (2.0 * cov + c2) / (var_d + var_f + c2);
            result.map.at(xx, y, 0) = q;
            total += q;
        }
    }
    result.score = total / (static_cast<double>(nx) * ny);
    return result;
}

double mef_ssim(const LdrImage& fused, std::span<const LdrImage> refs, const MefSsimOptions& opts) {
    return mef_ssim_detailed(fused, refs, opts).score;
}

double mef_ssim(const LdrImage& fused, const ExposureTriplet& refs, const MefSsimOptions& opts) {
    return mef_ssim(fused, std::span<const LdrImage>(refs.images), opts);
}

}  // namespace satrestore
