#pragma once

#include <array>
#include <vector>

#include "satrestore/core/feature_map.hpp"
#include "satrestore/exposedness/tensor_file.hpp"

namespace satrestore {

/// 3x3 convolution, zero padded, stride 1. Weights are [out][in][ky][kx].
struct Conv3x3 {
    int in_channels = 0;
    int out_channels = 0;
    std::vector<double> weight;
    std::vector<double> bias;

    static Conv3x3 zeros(int in_channels, int out_channels);
    double& w(int o, int i, int ky, int kx) { return weight[((static_cast<std::size_t>(o) * in_channels + i) * 3 + ky) * 3 + kx]; }
    double w(int o, int i, int ky, int kx) const { return weight[((static_cast<std::size_t>(o) * in_channels + i) * 3 + ky) * 3 + kx]; }
};

FeatureMap conv3x3(const FeatureMap& x, const Conv3x3& conv);

/// Number of levels at which guidance features are injected into the host network.
inline constexpr int kGuidanceLevels = 4;
/// Default width of the guidance convolutions.
inline constexpr int kGuidanceWidth = 16;

/// Trained per-level scales reported for the reference network.
inline constexpr std::array<double, kGuidanceLevels> kTrainedAlpha{0.9884, 0.9849, 0.981, 1.0826};
inline constexpr std::array<double, kGuidanceLevels> kTrainedBeta{1.0112, 0.9789, 0.9888, 1.0021};

struct GuidanceParams {
    Conv3x3 conv1;
    Conv3x3 conv2;
    std::array<double, kGuidanceLevels> alpha{1.0, 1.0, 1.0, 1.0};
    std::array<double, kGuidanceLevels> beta{0.0, 0.0, 0.0, 0.0};
    /// Leaky ramp slope for x < 0; 1.0 makes the activation the identity.
    double negative_slope = 0.2;

    /// Entries "conv1", "conv1.bias", "conv2", "conv2.bias", "alpha", "beta"
    /// and optionally "negative_slope".
    static GuidanceParams from_tensors(const TensorFile& file);
    TensorFile to_tensors() const;
};

/// G = conv2(act(conv1(gated))).
FeatureMap guidance_features(const FeatureMap& gated, const GuidanceParams& params);

/// alpha[level] * host + beta[level] * guidance, level in [0, kGuidanceLevels).
FeatureMap inject_guidance(const FeatureMap& host, const FeatureMap& guidance, const GuidanceParams& params,
                           int level);

/// inject_guidance(host, guidance_features(gated, params), params, level).
FeatureMap guidance_forward(const FeatureMap& gated, const FeatureMap& host, const GuidanceParams& params, int level);

}  // namespace satrestore
