#pragma once

#include <string>
#include <vector>

#include "satrestore/core/feature_map.hpp"
#include "satrestore/core/image.hpp"

namespace satrestore {

/// Stage index: `scale` counts pooling steps applied before the stage
/// (1 = full resolution), `kernel` selects the filter within that scale.
/// Both are 1-based.
struct FeatureStage {
    int scale = 1;
    int kernel = 1;
};

/// Maps a level-domain image to a feature map at a named stage.
class FeatureExtractor {
public:
    virtual ~FeatureExtractor() = default;
    virtual int scales() const = 0;
    virtual int kernels() const = 0;
    virtual std::string stage_name(FeatureStage stage) const = 0;
    /// `image` is in 0..255 level units.
    virtual FeatureMap extract(const FloatImage& image, FeatureStage stage) const = 0;
};

/// Fixed filter bank applied per channel to [0,1]-scaled input, zero padded:
/// 1 identity, 2 5x5 binomial Gaussian, 3 horizontal and 4 vertical central
/// difference. Scale s applies s-1 rounds of 2x2 max pooling first.
class KernelBankExtractor final : public FeatureExtractor {
public:
    explicit KernelBankExtractor(int scales = 2);

    int scales() const override { return scales_; }
    int kernels() const override { return static_cast<int>(bank_.size()); }
    std::string stage_name(FeatureStage stage) const override;
    FeatureMap extract(const FloatImage& image, FeatureStage stage) const override;

    /// 5x5 kernels, row-major.
    const std::vector<std::vector<double>>& bank() const noexcept { return bank_; }

private:
    int scales_;
    std::vector<std::vector<double>> bank_;
};

/// 2x2 max pooling with ceil sizing (edge windows use the available samples).
FeatureMap max_pool_2x2(const FeatureMap& x);

}  // namespace satrestore
