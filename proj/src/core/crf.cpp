#include "satrestore/core/crf.hpp"

#include <algorithm>
#include <cmath>

#include "satrestore/core/error.hpp"
#include "satrestore/core/image_io.hpp"

namespace satrestore {

namespace {

// Lower and upper end of {e : f(e) = z} for a piecewise linear nondecreasing
// table with t[0] = 0 and t[255] = 255.
double preimage_midpoint(const std::array<double, 256>& t, double z) {
    int lo = 0;
    while (lo < 255 && t[lo] < z) ++lo;
    double e_lo = lo;
    if (lo > 0 && t[lo] > z) {
        e_lo = (lo - 1) + (z - t[lo - 1]) / (t[lo] - t[lo - 1]);
    }

    int hi = 255;
    while (hi > 0 && t[hi] > z) --hi;
    double e_hi = hi;
    if (hi < 255 && t[hi] < z) {
        e_hi = hi + (z - t[hi]) / (t[hi + 1] - t[hi]);
    }
    return 0.5 * (e_lo + e_hi) / 255.0;
}

}  // namespace

void validate_crf_table(const CrfTable& table, const std::string& source) {
    for (int i = 0; i < 256; ++i) {
        for (int c = 0; c < 3; ++c) {
            const double v = table[c][i];
            const std::string row = "row " + std::to_string(i + 1);
            if (!std::isfinite(v) || v < 0.0 || v > 255.0) {
                throw ParseError(source, row, "value out of [0,255] in channel " + std::to_string(c));
            }
            if (i > 0 && v < table[c][i - 1]) {
                throw ParseError(source, row, "CRF not monotone in channel " + std::to_string(c));
            }
        }
    }
    for (int c = 0; c < 3; ++c) {
        if (table[c][0] != 0.0) throw ParseError(source, "row 1", "CRF must start at 0");
        if (table[c][255] != 255.0) throw ParseError(source, "row 256", "CRF must end at 255");
    }
}

Crf Crf::gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw Error("gamma CRF exponent must be positive, got " + std::to_string(gamma));
    }
    Crf crf;
    crf.kind_ = Kind::Gamma;
    crf.gamma_ = gamma;
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < 256; ++i) {
            crf.table_[c][i] = 255.0 * std::pow(i / 255.0, 1.0 / gamma);
        }
    }
    crf.build_inverse();
    return crf;
}

Crf Crf::tabulated(const CrfTable& table) {
    validate_crf_table(table, "crf table");
    Crf crf;
    crf.kind_ = Kind::Tabulated;
    crf.table_ = table;
    crf.build_inverse();
    return crf;
}

Crf Crf::from_spec(const std::string& spec) {
    constexpr std::string_view prefix = "gamma:";
    if (spec.starts_with(prefix)) {
        const std::string value = spec.substr(prefix.size());
        std::size_t used = 0;
        double g = 0.0;
        try {
            g = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) throw Error("invalid gamma CRF spec '" + spec + "'");
        return gamma(g);
    }
    return tabulated(read_crf_csv(spec));
}

double Crf::apply(double e, int channel) const noexcept {
    e = std::clamp(e, 0.0, 1.0);
    if (kind_ == Kind::Gamma) {
        return 255.0 * std::pow(e, 1.0 / gamma_);
    }
    const auto& t = table_[channel];
    const double pos = e * 255.0;
    const int i = std::min(static_cast<int>(pos), 254);
    const double frac = pos - i;
    return t[i] + frac * (t[i + 1] - t[i]);
}

void Crf::build_inverse() {
    for (int c = 0; c < 3; ++c) {
        for (int z = 0; z < 256; ++z) {
            inverse_[c][z] = kind_ == Kind::Gamma ? std::pow(z / 255.0, gamma_)
                                                  : preimage_midpoint(table_[c], static_cast<double>(z));
        }
    }
}

}  // namespace satrestore
