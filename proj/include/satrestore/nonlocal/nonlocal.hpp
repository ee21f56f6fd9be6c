#pragma once

#include <string>
#include <vector>

#include "satrestore/core/feature_map.hpp"
#include "satrestore/exposedness/tensor_file.hpp"

namespace satrestore {

/// 1x1 projections of the spatial branch, each C x C row-major (out x in).
/// `key` scores the attended positions i, `query` the output positions j,
/// `value` is what gets aggregated.
struct NdmParams {
    int channels = 0;
    std::vector<double> key;
    std::vector<double> query;
    std::vector<double> value;

    static NdmParams identity(int channels);
    static NdmParams zeros(int channels);
    /// Entries "<prefix>key", "<prefix>query", "<prefix>value", each [C, C].
    static NdmParams from_tensors(const TensorFile& file, const std::string& prefix = "ndm.");
    void to_tensors(TensorFile& file, const std::string& prefix = "ndm.") const;
};

enum class NdmOrder { SpatialThenChannel, ChannelThenSpatial };

/// Network layout constants: groups of non-local dual modules.
struct NrrgLayout {
    int groups = 4;
    int modules_per_group = 4;
    NdmOrder order = NdmOrder::SpatialThenChannel;
};

/// Largest N = H * W for which a full N x N similarity matrix is materialized.
inline constexpr int kMaxMaterializedPositions = 4096;

/// out[o] = sum_i kernel[o][i] * x[i] at every position.
FeatureMap project_1x1(const FeatureMap& x, const std::vector<double>& kernel);

/// S[j][i] = softmax_i(key_i . query_j), N x N row-major. Throws when N > kMaxMaterializedPositions.
std::vector<double> spatial_similarity(const FeatureMap& x, const NdmParams& p);

/// S[j][i] = softmax_i(X_i . X_j) over channel planes, C x C row-major.
std::vector<double> channel_similarity(const FeatureMap& x);

/// E_j = sum_i S[j][i] value_i + X_j. Rows of S are streamed, never stored whole.
FeatureMap nonlocal_spatial(const FeatureMap& x, const NdmParams& p);

/// E_j = sum_i S[j][i] X_i + X_j over channels; no learned parameters.
FeatureMap nonlocal_channel(const FeatureMap& x);

FeatureMap ndm_forward(const FeatureMap& x, const NdmParams& p, NdmOrder order = NdmOrder::SpatialThenChannel);

}  // namespace satrestore
