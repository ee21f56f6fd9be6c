#include "satrestore/fuse/hdr_merge.hpp"

#include <algorithm>
#include <string>

#include "satrestore/core/error.hpp"

namespace satrestore {

double hat_weight(int z) noexcept { return std::min(z, 255 - z) + 1.0; }

RadianceImage hdr_merge(std::span<const LdrImage> images, std::span<const double> times, const Crf& crf) {
    if (images.empty()) throw Error("hdr_merge: no images");
    if (images.size() != times.size()) throw Error("hdr_merge: one exposure time per image required");
    for (std::size_t j = 0; j < images.size(); ++j) {
        if (!(times[j] > 0.0)) throw Error("hdr_merge: exposure time " + std::to_string(j) + " must be positive");
        require_same_shape(images[0], images[j], "hdr_merge");
    }
    if (images[0].channels() != 3) throw ShapeError("hdr_merge expects RGB images");

    const std::size_t shortest = static_cast<std::size_t>(std::min_element(times.begin(), times.end()) - times.begin());
    const std::size_t longest = static_cast<std::size_t>(std::max_element(times.begin(), times.end()) - times.begin());

    const int w = images[0].width();
    const int h = images[0].height();
    RadianceImage out(w, h, 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < 3; ++c) {
                double num = 0.0;
                double den = 0.0;
                double single = 0.0;
                int used = 0;
                bool any_high = false;
                for (std::size_t j = 0; j < images.size(); ++j) {
                    const int z = images[j].at(x, y, c);
                    if (z == 255) any_high = true;
                    if (z == 0 || z == 255) continue;
                    const double wt = hat_weight(z);
                    single = crf.invert(z, c) / times[j];
                    num += wt * single;
                    den += wt;
                    ++used;
                }
                double e = 0.0;
                if (used == 1) {
                    e = single;
                } else if (used > 1) {
                    e = num / den;
                } else {
                    // Every sample clipped: trust the least clipped exposure.
                    const std::size_t j = any_high ? shortest : longest;
                    const int z = images[j].at(x, y, c);
                    e = crf.invert(z, c) / times[j];
                }
                out.at(x, y, c) = e;
            }
        }
    }
    return out;
}

RadianceImage hdr_merge(const ExposureTriplet& triplet, const Crf& crf) {
    triplet.validate();
    return hdr_merge(std::span<const LdrImage>(triplet.images), std::span<const double>(triplet.times), crf);
}

}  // namespace satrestore
