#pragma once

#include <span>

#include "satrestore/core/crf.hpp"
#include "satrestore/core/exposure.hpp"
#include "satrestore/core/image.hpp"

namespace satrestore {

/// Hat weight min(z, 255 - z) + 1.
double hat_weight(int z) noexcept;

/// Weighted radiance merge per channel:
///   E = sum_j w(z_j) f^-1(z_j) / dt_j / sum_j w(z_j),
/// where w is the hat weight and samples clipped at 0 or 255 are excluded
/// whenever at least one exposure is unclipped. If every exposure is clipped
/// high the shortest exposure's estimate is used; if every exposure is clipped
/// low, the longest one's.
RadianceImage hdr_merge(std::span<const LdrImage> images, std::span<const double> times, const Crf& crf);
RadianceImage hdr_merge(const ExposureTriplet& triplet, const Crf& crf);

}  // namespace satrestore
