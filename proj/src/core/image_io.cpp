#include "satrestore/core/image_io.hpp"

#include <png.h>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "satrestore/core/error.hpp"

namespace satrestore {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw Error("cannot open '" + path + "'");
    return f;
}

[[noreturn]] void png_error_handler(png_structp png, png_const_charp msg) {
    auto* text = static_cast<std::string*>(png_get_error_ptr(png));
    if (text) *text = msg;
    png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

std::uint32_t load_u32(const unsigned char* p, bool little) {
    std::uint32_t v = 0;
    std::memcpy(&v, p, 4);
    if ((std::endian::native == std::endian::little) != little) {
        v = ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
    }
    return v;
}

}  // namespace

LdrImage read_png(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        throw ParseError(path, "byte 0", "not a PNG file");
    }

    std::string err;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, png_error_handler, png_warning_handler);
    if (!png) throw Error("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error("png_create_info_struct failed");
    }

    LdrImage img;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ParseError(path, "png stream", err.empty() ? "decode failed" : err);
    }

    png_init_io(png, f.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);

    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    if (png_get_channels(png, info) != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ParseError(path, "IHDR", "unsupported channel layout");
    }

    img = LdrImage(static_cast<int>(width), static_cast<int>(height), 3);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = img.pixel(0, static_cast<int>(y));
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void write_png(const std::string& path, const LdrImage& img) {
    if (img.channels() != 3) throw ShapeError("write_png expects 3 channels");
    FilePtr f = open_file(path, "wb");

    std::string err;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, png_error_handler, png_warning_handler);
    if (!png) throw Error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("png_create_info_struct failed");
    }
    std::vector<png_bytep> rows(static_cast<std::size_t>(img.height()));
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error("writing '" + path + "' failed: " + err);
    }

    png_init_io(png, f.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height(); ++y) rows[y] = const_cast<png_bytep>(img.pixel(0, y));
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void write_mask_png(const std::string& path, const Mask& mask) {
    LdrImage out(mask.width(), mask.height(), 3);
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = mask.data()[i] ? 255 : 0;
    write_png(path, out);
}

RadianceImage read_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    // Header: three whitespace-terminated tokens after the magic.
    std::size_t pos = 0;
    auto next_token = [&](const char* what) {
        while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
        const std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(bytes[pos])) ++pos;
        if (start == pos) throw ParseError(path, "byte " + std::to_string(start), std::string("missing ") + what);
        return std::string(bytes.begin() + start, bytes.begin() + pos);
    };

    const std::string magic = next_token("magic");
    if (magic != "PF") throw ParseError(path, "byte 0", "expected 3-channel 'PF' magic, got '" + magic + "'");
    const std::size_t width_at = pos;
    const std::string ws = next_token("width");
    const std::string hs = next_token("height");
    const std::string ss = next_token("scale");
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
        throw ParseError(path, "byte " + std::to_string(pos), "header not terminated");
    }
    ++pos;

    int width = 0;
    int height = 0;
    double scale = 0.0;
    try {
        width = std::stoi(ws);
        height = std::stoi(hs);
        scale = std::stod(ss);
    } catch (const std::exception&) {
        throw ParseError(path, "byte " + std::to_string(width_at), "malformed header numbers");
    }
    if (width < 1 || height < 1 || scale == 0.0 || !std::isfinite(scale)) {
        throw ParseError(path, "byte " + std::to_string(width_at), "invalid dimensions or scale");
    }
    const bool little = scale < 0.0;

    const std::size_t need = static_cast<std::size_t>(width) * height * 3 * 4;
    if (bytes.size() - pos < need) {
        throw ParseError(path, "byte " + std::to_string(bytes.size()),
                         "truncated pixel data, expected " + std::to_string(need) + " bytes");
    }

    RadianceImage img(width, height, 3);
    for (int row = 0; row < height; ++row) {
        const int y = height - 1 - row;
        for (int x = 0; x < width; ++x) {
            for (int c = 0; c < 3; ++c) {
                const std::size_t off = pos + ((static_cast<std::size_t>(row) * width + x) * 3 + c) * 4;
                const float v = std::bit_cast<float>(load_u32(bytes.data() + off, little));
                if (!std::isfinite(v) || v < 0.0f) {
                    throw ParseError(path, "byte " + std::to_string(off),
                                     std::isfinite(v) ? "negative radiance sample" : "non-finite sample");
                }
                img.at(x, y, c) = v;
            }
        }
    }
    return img;
}

void write_pfm(const std::string& path, const FloatImage& img) {
    if (img.channels() != 3) throw ShapeError("write_pfm expects 3 channels");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << "PF\n" << img.width() << " " << img.height() << "\n-1.0\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(img.width()) * 3 * 4);
    for (int y = img.height() - 1; y >= 0; --y) {
        std::size_t k = 0;
        for (int x = 0; x < img.width(); ++x) {
            for (int c = 0; c < 3; ++c) {
                std::uint32_t bits = std::bit_cast<std::uint32_t>(static_cast<float>(img.at(x, y, c)));
                for (int b = 0; b < 4; ++b) row[k++] = static_cast<unsigned char>((bits >> (8 * b)) & 0xffu);
            }
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw Error("writing '" + path + "' failed");
}

CrfTable read_crf_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    CrfTable table{};
    std::string line;
    int row = 0;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const std::string where = "row " + std::to_string(line_no);
        if (row >= 256) throw ParseError(path, where, "more than 256 rows");

        std::array<double, 3> v{};
        const char* p = line.c_str();
        const char* end = p + line.size();
        for (int c = 0; c < 3; ++c) {
            while (p < end && (*p == ' ' || *p == '\t')) ++p;
            auto [next, ec] = std::from_chars(p, end, v[c]);
            if (ec != std::errc{}) throw ParseError(path, where, "expected number in column " + std::to_string(c + 1));
            p = next;
            while (p < end && (*p == ' ' || *p == '\t')) ++p;
            if (c < 2) {
                if (p >= end || *p != ',') throw ParseError(path, where, "expected 3 comma-separated columns");
                ++p;
            }
        }
        if (p != end) throw ParseError(path, where, "trailing characters");
        for (int c = 0; c < 3; ++c) {
            if (!std::isfinite(v[c]) || v[c] < 0.0 || v[c] > 255.0) {
                throw ParseError(path, where, "value out of [0,255] in column " + std::to_string(c + 1));
            }
            if (row > 0 && v[c] < table[c][row - 1]) {
                throw ParseError(path, where, "CRF not monotone in column " + std::to_string(c + 1));
            }
            table[c][row] = v[c];
        }
        ++row;
    }
    if (row != 256) {
        throw ParseError(path, "row " + std::to_string(line_no), "expected 256 rows, got " + std::to_string(row));
    }
    validate_crf_table(table, path);
    return table;
}

void write_crf_csv(const std::string& path, const CrfTable& table) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    char buf[64];
    for (int i = 0; i < 256; ++i) {
        for (int c = 0; c < 3; ++c) {
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, table[c][i]);
            (void)ec;
            out.write(buf, end - buf);
            out.put(c < 2 ? ',' : '\n');
        }
    }
    if (!out) throw Error("writing '" + path + "' failed");
}

}  // namespace satrestore
