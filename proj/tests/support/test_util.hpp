#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "satrestore/core/crf.hpp"
#include "satrestore/core/image.hpp"

namespace testutil {

inline satrestore::LdrImage random_ldr(int w, int h, std::mt19937_64& rng, int lo = 0, int hi = 255) {
    std::uniform_int_distribution<int> d(lo, hi);
    satrestore::LdrImage img(w, h, 3);
    for (auto& v : img.data()) v = static_cast<std::uint8_t>(d(rng));
    return img;
}

inline satrestore::FloatImage random_float(int w, int h, int c, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    satrestore::FloatImage img(w, h, c);
    for (auto& v : img.data()) v = d(rng);
    return img;
}

/// Random monotone CRF table: cumulative sums of positive random steps,
/// with an occasional flat run, rescaled to span 0..255.
inline satrestore::CrfTable random_crf_table(std::mt19937_64& rng, bool allow_plateaus = true) {
    std::uniform_real_distribution<double> step(0.05, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    satrestore::CrfTable t{};
    for (int c = 0; c < 3; ++c) {
        const double curve = 0.3 + 2.0 * unit(rng);
        double acc = 0.0;
        t[c][0] = 0.0;
        for (int i = 1; i < 256; ++i) {
            const bool flat = allow_plateaus && unit(rng) < 0.03;
            const double bend = std::pow((256.0 - i) / 256.0, curve);
            acc += flat ? 0.0 : step(rng) * (0.2 + bend);
            t[c][i] = acc;
        }
        for (int i = 1; i < 256; ++i) t[c][i] = std::min(t[c][i] * 255.0 / acc, 255.0);
        t[c][255] = 255.0;
    }
    return t;
}

/// True when every sample equals `v`.
template <class T, class U>
bool all_equal(const satrestore::Image<T>& img, U v) {
    for (const T s : img.data())
        if (s != static_cast<T>(v)) return false;
    return true;
}

inline std::filesystem::path temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("satrestore_test_" + name);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace testutil
