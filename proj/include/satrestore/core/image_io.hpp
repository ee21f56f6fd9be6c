#pragma once

#include <string>

#include "satrestore/core/crf.hpp"
#include "satrestore/core/image.hpp"

namespace satrestore {

/// Reads any 8/16-bit PNG and converts it to 8-bit RGB.
LdrImage read_png(const std::string& path);
void write_png(const std::string& path, const LdrImage& img);

/// Writes a 0/1 mask as a 0/255 RGB PNG.
void write_mask_png(const std::string& path, const Mask& mask);

/// 3-channel PFM. Written little-endian (scale -1.0), bottom row first.
/// Reading accepts either byte order and rejects non-finite or negative samples.
RadianceImage read_pfm(const std::string& path);
void write_pfm(const std::string& path, const FloatImage& img);

/// 256 lines of "r,g,b". Validated with validate_crf_table.
CrfTable read_crf_csv(const std::string& path);
void write_crf_csv(const std::string& path, const CrfTable& table);

}  // namespace satrestore
