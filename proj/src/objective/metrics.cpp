#include "satrestore/objective/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "satrestore/core/error.hpp"

namespace satrestore {

IntegralImage::IntegralImage(const FloatImage& img, int channel, bool squared) { build(img, nullptr, channel, squared); }

IntegralImage::IntegralImage(const FloatImage& a, const FloatImage& b, int channel) { build(a, &b, channel, false); }

void IntegralImage::build(const FloatImage& a, const FloatImage* b, int channel, bool squared) {
    width_ = a.width() + 1;
    const int rows = a.height() + 1;
    table_.assign(static_cast<std::size_t>(width_) * rows, 0.0);
    for (int y = 0; y < a.height(); ++y) {
        double row = 0.0;
        for (int x = 0; x < a.width(); ++x) {
            const double v = a.at(x, y, channel);
            row += b ? v * b->at(x, y, channel) : squared ? v * v : v;
            table_[static_cast<std::size_t>(y + 1) * width_ + x + 1] = table_[static_cast<std::size_t>(y) * width_ + x + 1] + row;
        }
    }
}

double IntegralImage::sum(int x, int y, int w, int h) const noexcept {
    const auto at = [&](int xx, int yy) { return table_[static_cast<std::size_t>(yy) * width_ + xx]; };
    return at(x + w, y + h) - at(x, y + h) - at(x + w, y) + at(x, y);
}

double mse(const LdrImage& a, const LdrImage& b) {
    require_same_shape(a, b, "mse");
    const auto da = a.data();
    const auto db = b.data();
    double sum = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) {
        const double d = (static_cast<double>(da[i]) - static_cast<double>(db[i])) / 255.0;
        sum += d * d;
    }
    return sum / static_cast<double>(da.size());
}

double mse(const FloatImage& a, const FloatImage& b) {
    require_same_shape(a, b, "mse");
    const auto da = a.data();
    const auto db = b.data();
    double sum = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) sum += (da[i] - db[i]) * (da[i] - db[i]);
    return sum / static_cast<double>(da.size());
}

double psnr_from_mse(double m) noexcept {
    if (m <= 0.0) return kPsnrCap;
    return std::min(kPsnrCap, 10.0 * std::log10(1.0 / m));
}

double psnr(const LdrImage& a, const LdrImage& b) { return psnr_from_mse(mse(a, b)); }

double ssim(const FloatImage& a, const FloatImage& b, const SsimOptions& opts) {
    require_same_shape(a, b, "ssim");
    const int win = std::min({opts.window, a.width(), a.height()});
    const double n = static_cast<double>(win) * win;
    const double c1 = opts.k1 * opts.k1;
    const double c2 = opts.k2 * opts.k2;
    const int nx = a.width() - win + 1;
    const int ny = a.height() - win + 1;

    double total = 0.0;
    for (int c = 0; c < a.channels(); ++c) {
        const IntegralImage sa(a, c), sb(b, c), saa(a, c, true), sbb(b, c, true), sab(a, b, c);
        double channel_sum = 0.0;
        for (int y = 0; y < ny; ++y) {
            for (int x = 0; x < nx; ++x) {
                const double ma = sa.sum(x, y, win, win) / n;
                const double mb = sb.sum(x, y, win, win) / n;
                const double va = std::max(saa.sum(x, y, win, win) / n - ma * ma, 0.0);
                const double vb = std::max(sbb.sum(x, y, win, win) / n - mb * mb, 0.0);
                const double cov = sab.sum(x, y, win, win) / n - ma * mb;
                channel_sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            }
        }
        total += channel_sum / (static_cast<double>(nx) * ny);
    }
    return total / a.channels();
}

double ssim(const LdrImage& a, const LdrImage& b, const SsimOptions& opts) {
    require_same_shape(a, b, "ssim");
    FloatImage fa = to_float(a);
    FloatImage fb = to_float(b);
    for (double& v : fa.data()) v /= 255.0;
    for (double& v : fb.data()) v /= 255.0;
    return ssim(fa, fb, opts);
}

}  // namespace satrestore
