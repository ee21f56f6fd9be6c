#include "satrestore/synthgen/synthesis.hpp"

#include <string>

#include "satrestore/core/error.hpp"

namespace satrestore {

namespace {

double band_weight(double h, WeightMode mode) noexcept {
    const double h2 = h * h;
    const double h3 = h2 * h;
    return mode == WeightMode::Verbatim ? 128.0 - 3.0 * h2 + 2.0 * h3 : 128.0 * (3.0 * h2 - 2.0 * h3);
}

template <class WeightFn>
double weighted_ratio(const Rgb8& pixel, const ImfLut& imf, WeightFn weight, int boundary) noexcept {
    double num = 0.0;
    double den = 0.0;
    for (int c = 0; c < 3; ++c) {
        const double z = pixel[c];
        const double w = weight(z);
        num += w * imf(pixel[c], c) * z;
        den += w * z * z;
    }
    if (den > 0.0) return num / den;

    const bool black = pixel[0] == 0 && pixel[1] == 0 && pixel[2] == 0;
    const int anchor = black ? 1 : boundary;
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) sum += imf(anchor, c) / anchor;
    return sum / 3.0;
}

void check_inputs(const LdrImage& z1, const ExposureConfig& cfg, const char* what) {
    if (z1.channels() != 3) throw ShapeError(std::string(what) + ": expected an RGB image");
    // Equal times are allowed here (identity mapping); only the full pipeline needs dt0 < dt1 < dt2.
    if (!(cfg.dt0 > 0.0 && cfg.dt1 > 0.0 && cfg.dt2 > 0.0)) {
        throw Error(std::string(what) + ": exposure times must be positive");
    }
    if (!(0 < cfg.xi_l && cfg.xi_l < cfg.xi_u && cfg.xi_u <= 255)) {
        throw Error(std::string(what) + ": thresholds must satisfy 0 < xi_l < xi_u <= 255");
    }
}

}  // namespace

WeightMode parse_weight_mode(const std::string& name) {
    if (name == "verbatim") return WeightMode::Verbatim;
    if (name == "smooth") return WeightMode::Smooth;
    throw Error("unknown weight mode '" + name + "' (expected verbatim|smooth)");
}

const char* to_string(WeightMode mode) noexcept { return mode == WeightMode::Verbatim ? "verbatim" : "smooth"; }

double reliability_weight(double z, double xi_u, double xi_l, WeightMode mode) noexcept {
    if (z > xi_u) return 0.0;
    if (z > xi_l) return band_weight((xi_u - z) / (xi_u - xi_l), mode);
    return 128.0;
}

double brightening_weight(double z, double xi_lo, double xi_hi, WeightMode mode) noexcept {
    if (z < xi_lo) return 0.0;
    if (z < xi_hi) return band_weight((z - xi_lo) / (xi_hi - xi_lo), mode);
    return 128.0;
}

double fixed_ratio(const Rgb8& pixel, const ImfLut& imf, int xi_u, int xi_l, WeightMode mode) noexcept {
    return weighted_ratio(
        pixel, imf, [&](double z) { return reliability_weight(z, xi_u, xi_l, mode); }, xi_u);
}

double fixed_ratio_bright(const Rgb8& pixel, const ImfLut& imf, int xi_lo, int xi_hi, WeightMode mode) noexcept {
    return weighted_ratio(
        pixel, imf, [&](double z) { return brightening_weight(z, xi_lo, xi_hi, mode); }, xi_lo);
}

SynthesisResult synthesize_dark_detailed(const LdrImage& z1, const Crf& crf, const ExposureConfig& cfg,
                                         const SynthesisOptions& opts) {
    check_inputs(z1, cfg, "synthesize_dark");
    const ImfLut imf = build_imf(crf, cfg.dt1, cfg.dt0);
    SynthesisResult out{LdrImage(z1.width(), z1.height(), 3), Mask(z1.width(), z1.height(), 1),
                        FloatImage(z1.width(), z1.height(), 1)};
    for (int y = 0; y < z1.height(); ++y) {
        for (int x = 0; x < z1.width(); ++x) {
            const std::uint8_t* p = z1.pixel(x, y);
            std::uint8_t* q = out.image.pixel(x, y);
            if (p[0] <= cfg.xi_u && p[1] <= cfg.xi_u && p[2] <= cfg.xi_u) {
                for (int c = 0; c < 3; ++c) q[c] = quantize(imf(p[c], c));
                continue;
            }
            const double ratio = fixed_ratio({p[0], p[1], p[2]}, imf, cfg.xi_u, cfg.xi_l, opts.mode);
            for (int c = 0; c < 3; ++c) q[c] = quantize(ratio * p[c]);
            out.fixed_ratio_used.at(x, y, 0) = 1;
            out.ratio.at(x, y, 0) = ratio;
        }
    }
    return out;
}

SynthesisResult synthesize_bright_detailed(const LdrImage& z1, const Crf& crf, const ExposureConfig& cfg,
                                           const SynthesisOptions& opts) {
    check_inputs(z1, cfg, "synthesize_bright");
    if (!(0 < opts.bright_xi_l && opts.bright_xi_l < opts.bright_xi_u && opts.bright_xi_u <= 255)) {
        throw Error("bright-side thresholds must satisfy 0 < xi_l' < xi_u' <= 255");
    }
    const ImfLut imf = build_imf(crf, cfg.dt1, cfg.dt2);
    SynthesisResult out{LdrImage(z1.width(), z1.height(), 3), Mask(z1.width(), z1.height(), 1),
                        FloatImage(z1.width(), z1.height(), 1)};
    const int lo = opts.bright_xi_l;
    for (int y = 0; y < z1.height(); ++y) {
        for (int x = 0; x < z1.width(); ++x) {
            const std::uint8_t* p = z1.pixel(x, y);
            std::uint8_t* q = out.image.pixel(x, y);
            if (p[0] >= lo && p[1] >= lo && p[2] >= lo) {
                for (int c = 0; c < 3; ++c) q[c] = quantize(imf(p[c], c));
                continue;
            }
            const double ratio = fixed_ratio_bright({p[0], p[1], p[2]}, imf, lo, opts.bright_xi_u, opts.mode);
            for (int c = 0; c < 3; ++c) q[c] = quantize(ratio * p[c]);
            out.fixed_ratio_used.at(x, y, 0) = 1;
            out.ratio.at(x, y, 0) = ratio;
        }
    }
    return out;
}

LdrImage synthesize_dark(const LdrImage& z1, const Crf& crf, const ExposureConfig& cfg, WeightMode mode) {
    return synthesize_dark_detailed(z1, crf, cfg, {.mode = mode}).image;
}

LdrImage synthesize_bright(const LdrImage& z1, const Crf& crf, const ExposureConfig& cfg, WeightMode mode) {
    return synthesize_bright_detailed(z1, crf, cfg, {.mode = mode}).image;
}

}  // namespace satrestore
