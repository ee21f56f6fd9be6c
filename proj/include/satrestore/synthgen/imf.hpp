#pragma once

#include <array>

#include "satrestore/core/crf.hpp"

namespace satrestore {

/// Intensity mapping function between two exposures of the same scene,
/// tabulated per channel on the 256 source levels (real-valued, unquantized).
struct ImfLut {
    enum class Direction { Darken, Brighten, Identity };

    Direction direction = Direction::Identity;
    double ratio = 1.0;  // dt_dst / dt_src
    CrfTable table{};

    double operator()(int z, int channel) const noexcept { return table[channel][z]; }
};

/// table[c][z] = crf.apply(crf.invert(z, c) * dt_dst / dt_src, c).
ImfLut build_imf(const Crf& crf, double dt_src, double dt_dst);

}  // namespace satrestore
