#include "satrestore/synthgen/imf.hpp"

#include <string>

#include "satrestore/core/error.hpp"

namespace satrestore {

ImfLut build_imf(const Crf& crf, double dt_src, double dt_dst) {
    if (!(dt_src > 0.0) || !(dt_dst > 0.0)) {
        throw Error("build_imf: exposure times must be positive (got " + std::to_string(dt_src) + ", " +
                    std::to_string(dt_dst) + ")");
    }
    ImfLut lut;
    lut.ratio = dt_dst / dt_src;
    lut.direction = lut.ratio < 1.0   ? ImfLut::Direction::Darken
                    : lut.ratio > 1.0 ? ImfLut::Direction::Brighten
                                      : ImfLut::Direction::Identity;
    for (int c = 0; c < 3; ++c) {
        for (int z = 0; z < 256; ++z) {
            lut.table[c][z] = lut.ratio == 1.0 ? static_cast<double>(z) : crf.apply(crf.invert(z, c) * lut.ratio, c);
        }
    }
    return lut;
}

}  // namespace satrestore
