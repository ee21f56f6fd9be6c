#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "satrestore/core/error.hpp"

namespace satrestore {

/// Interleaved H x W x C image, row-major, top row first.
template <class T>
class Image {
public:
    using value_type = T;

    Image() = default;
    Image(int width, int height, int channels = 3, T fill = T{})
        : width_(width), height_(height), channels_(channels) {
        if (width < 1 || height < 1 || channels < 1) {
            throw ShapeError("image dimensions must be >= 1, got " + std::to_string(width) + "x" +
                             std::to_string(height) + "x" + std::to_string(channels));
        }
        data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& at(int x, int y, int c) noexcept { return data_[index(x, y, c)]; }
    const T& at(int x, int y, int c) const noexcept { return data_[index(x, y, c)]; }

    T* pixel(int x, int y) noexcept { return data_.data() + index(x, y, 0); }
    const T* pixel(int x, int y) const noexcept { return data_.data() + index(x, y, 0); }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    template <class U>
    bool same_shape(const Image<U>& other) const noexcept {
        return width_ == other.width() && height_ == other.height() && channels_ == other.channels();
    }

    bool operator==(const Image&) const = default;

private:
    std::size_t index(int x, int y, int c) const noexcept {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<T> data_;
};

/// 8-bit RGB image, samples in [0, 255].
using LdrImage = Image<std::uint8_t>;
/// Real-valued image; used for level-domain intermediates and signed residuals.
using FloatImage = Image<double>;
/// Linear scene-referred radiance (relative units). Samples are finite and >= 0.
using RadianceImage = Image<double>;
/// Per-channel binary mask; samples are 0 or 1.
using Mask = Image<std::uint8_t>;

/// Round half away from zero, then clamp to [0, 255].
inline std::uint8_t quantize(double level) noexcept {
    const double r = std::round(level);
    return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

template <class U, class T>
void require_same_shape(const Image<T>& a, const Image<U>& b, const char* what) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(what) + ": dimension mismatch (" + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + "x" + std::to_string(a.channels()) + " vs " +
                         std::to_string(b.width()) + "x" + std::to_string(b.height()) + "x" +
                         std::to_string(b.channels()) + ")");
    }
}

inline FloatImage to_float(const LdrImage& img) {
    FloatImage out(img.width(), img.height(), img.channels());
    std::ranges::copy(img.data(), out.data().begin());
    return out;
}

inline LdrImage quantize(const FloatImage& img) {
    LdrImage out(img.width(), img.height(), img.channels());
    std::ranges::transform(img.data(), out.data().begin(), [](double v) { return quantize(v); });
    return out;
}

/// BT.601 luma, in the units of the input.
inline double luma(double r, double g, double b) noexcept { return 0.299 * r + 0.587 * g + 0.114 * b; }

}  // namespace satrestore
