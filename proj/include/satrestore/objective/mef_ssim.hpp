#pragma once

#include <span>
#include <vector>

#include "satrestore/core/exposure.hpp"
#include "satrestore/core/image.hpp"

namespace satrestore {

/// Structural-similarity score of a fused image against an exposure stack.
///
/// Every reference and the fused image are reduced to BT.601 luma on the
/// 0..255 scale. At each window position the references are split into mean,
/// signal strength c_k = ||x_k - mu_k|| + strength_offset and structure. The
/// desired patch has the largest strength among the references and a
/// structure that blends theirs with weights (c_k / window)^p, where
/// p = tan(pi/2 * R) (capped at p_cap) grows with the structural consistency
/// R = ||sum_k (x_k - mu_k)|| / sum_k ||x_k - mu_k||. The desired patch is
/// compared to the fused patch with the SSIM contrast-structure term and the
/// scores are averaged over all window positions (stride 1).
struct MefSsimOptions {
    int window = 8;
    double k2 = 0.03;
    double strength_offset = 0.001;
    double p_cap = 10.0;
};

struct MefSsimResult {
    double score = 0.0;
    /// Per-position scores, (W - window + 1) x (H - window + 1), single channel.
    FloatImage map;
};

MefSsimResult mef_ssim_detailed(const LdrImage& fused, std::span<const LdrImage> refs, const MefSsimOptions& opts = {});
double mef_ssim(const LdrImage& fused, std::span<const LdrImage> refs, const MefSsimOptions& opts = {});
double mef_ssim(const LdrImage& fused, const ExposureTriplet& refs, const MefSsimOptions& opts = {});

/// Luma plane of an RGB image on the 0..255 scale (single channel).
FloatImage luma_plane(const LdrImage& img);

}  // namespace satrestore
