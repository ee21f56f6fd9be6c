#include "satrestore/fuse/pyramid.hpp"

#include <algorithm>
#include <cmath>

#include "satrestore/core/error.hpp"

namespace satrestore {

namespace {

constexpr double kTaps[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

int reflect101(int i, int n) noexcept {
    if (n == 1) return 0;
    while (i < 0 || i >= n) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * n - 2 - i;
    }
    return i;
}

FloatImage blur(const FloatImage& img) {
    const int w = img.width();
    const int h = img.height();
    const int ch = img.channels();
    FloatImage tmp(w, h, ch);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int k = -2; k <= 2; ++k) acc += kTaps[k + 2] * img.at(reflect101(x + k, w), y, c);
                tmp.at(x, y, c) = acc;
            }
    FloatImage out(w, h, ch);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int k = -2; k <= 2; ++k) acc += kTaps[k + 2] * tmp.at(x, reflect101(y + k, h), c);
                out.at(x, y, c) = acc;
            }
    return out;
}

}  // namespace

FloatImage pyr_down(const FloatImage& img) {
    const FloatImage b = blur(img);
    const int w = (img.width() + 1) / 2;
    const int h = (img.height() + 1) / 2;
    FloatImage out(w, h, img.channels());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = b.at(2 * x, 2 * y, c);
    return out;
}

FloatImage pyr_up(const FloatImage& img, int width, int height) {
    FloatImage up(width, height, img.channels(), 0.0);
    for (int y = 0; y < img.height() && 2 * y < height; ++y)
        for (int x = 0; x < img.width() && 2 * x < width; ++x)
            for (int c = 0; c < img.channels(); ++c) up.at(2 * x, 2 * y, c) = 4.0 * img.at(x, y, c);
    return blur(up);
}

int max_pyramid_levels(int width, int height) {
    int n = std::min(width, height);
    int levels = 1;
    while (n > 1) {
        n = (n + 1) / 2;
        ++levels;
    }
    return levels;
}

int pyramid_levels(int width, int height, int extra) {
    const int base = static_cast<int>(std::floor(std::log2(static_cast<double>(std::min(width, height)))));
    return std::clamp(base + extra, 1, max_pyramid_levels(width, height));
}

Pyramid gaussian_pyramid(const FloatImage& img, int levels) {
    if (levels < 1) throw Error("pyramid needs at least one level");
    Pyramid pyr;
    pyr.reserve(static_cast<std::size_t>(levels));
    pyr.push_back(img);
    for (int l = 1; l < levels; ++l) pyr.push_back(pyr_down(pyr.back()));
    return pyr;
}

Pyramid laplacian_pyramid(const FloatImage& img, int levels) {
    Pyramid pyr = gaussian_pyramid(img, levels);
    for (int l = 0; l + 1 < levels; ++l) {
        const FloatImage up = pyr_up(pyr[l + 1], pyr[l].width(), pyr[l].height());
        auto dst = pyr[l].data();
        const auto src = up.data();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
    }
    return pyr;
}

FloatImage collapse(const Pyramid& laplacian) {
    if (laplacian.empty()) throw Error("collapse: empty pyramid");
    FloatImage acc = laplacian.back();
    for (int l = static_cast<int>(laplacian.size()) - 2; l >= 0; --l) {
        FloatImage up = pyr_up(acc, laplacian[l].width(), laplacian[l].height());
        auto dst = up.data();
        const auto src = laplacian[l].data();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
        acc = std::move(up);
    }
    return acc;
}

}  // namespace satrestore
