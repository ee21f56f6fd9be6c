#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "satrestore/core/error.hpp"
#include "satrestore/core/image.hpp"

namespace satrestore {

/// Planar C x H x W tensor of doubles.
class FeatureMap {
public:
    FeatureMap() = default;
    FeatureMap(int channels, int height, int width, double fill = 0.0)
        : c_(channels), h_(height), w_(width) {
        if (channels < 1 || height < 1 || width < 1) {
            throw ShapeError("feature map dimensions must be >= 1");
        }
        data_.assign(static_cast<std::size_t>(channels) * height * width, fill);
    }

    int channels() const noexcept { return c_; }
    int height() const noexcept { return h_; }
    int width() const noexcept { return w_; }
    /// Number of spatial positions N = H * W.
    int positions() const noexcept { return h_ * w_; }

    double& at(int c, int y, int x) noexcept { return data_[(static_cast<std::size_t>(c) * h_ + y) * w_ + x]; }
    double at(int c, int y, int x) const noexcept { return data_[(static_cast<std::size_t>(c) * h_ + y) * w_ + x]; }

    /// Channel `c` flattened to N values.
    std::span<double> plane(int c) noexcept { return {data_.data() + static_cast<std::size_t>(c) * positions(), static_cast<std::size_t>(positions())}; }
    std::span<const double> plane(int c) const noexcept { return {data_.data() + static_cast<std::size_t>(c) * positions(), static_cast<std::size_t>(positions())}; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool same_shape(const FeatureMap& o) const noexcept { return c_ == o.c_ && h_ == o.h_ && w_ == o.w_; }
    bool operator==(const FeatureMap&) const = default;

private:
    int c_ = 0;
    int h_ = 0;
    int w_ = 0;
    std::vector<double> data_;
};

/// Levels scaled to [0, 1], one plane per image channel.
template <class T>
FeatureMap to_feature_map(const Image<T>& img, double scale = 1.0 / 255.0) {
    FeatureMap out(img.channels(), img.height(), img.width());
    for (int c = 0; c < img.channels(); ++c)
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) out.at(c, y, x) = scale * img.at(x, y, c);
    return out;
}

inline void require_same_shape(const FeatureMap& a, const FeatureMap& b, const char* what) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(what) + ": feature map shape mismatch (" + std::to_string(a.channels()) + "x" +
                         std::to_string(a.height()) + "x" + std::to_string(a.width()) + " vs " +
                         std::to_string(b.channels()) + "x" + std::to_string(b.height()) + "x" +
                         std::to_string(b.width()) + ")");
    }
}

}  // namespace satrestore
