#pragma once

#include <array>
#include <string>

namespace satrestore {

using CrfTable = std::array<std::array<double, 256>, 3>;

/// Camera response function: per-channel map from normalized exposure in
/// [0, 1] to a real pixel level in [0, 255], plus its inverse on the 256
/// integer levels.
///
/// The tabulated kind stores f sampled at e = i / 255 for i = 0..255 and is
/// piecewise linear in between. Inverting a flat run returns the midpoint of
/// the preimage interval.
class Crf {
public:
    enum class Kind { Gamma, Tabulated };

    /// f(e) = 255 * e^(1/gamma).
    static Crf gamma(double gamma);
    /// Table rows must be nondecreasing, in [0, 255], start at 0 and end at 255.
    static Crf tabulated(const CrfTable& table);
    /// Parses "gamma:2.2" or a CSV path.
    static Crf from_spec(const std::string& spec);

    Kind kind() const noexcept { return kind_; }
    double gamma_value() const noexcept { return gamma_; }
    /// Forward samples at e = i / 255 (exact for tabulated CRFs).
    const CrfTable& table() const noexcept { return table_; }

    /// Level for normalized exposure `e`; e is clamped to [0, 1].
    double apply(double e, int channel) const noexcept;
    /// Normalized exposure for integer level `z` in [0, 255].
    double invert(int z, int channel) const noexcept { return inverse_[channel][z]; }

private:
    Crf() = default;
    void build_inverse();

    Kind kind_ = Kind::Gamma;
    double gamma_ = 1.0;
    CrfTable table_{};
    CrfTable inverse_{};
};

/// Throws ParseError naming the first offending row when `table` is not a valid CRF.
void validate_crf_table(const CrfTable& table, const std::string& source);

}  // namespace satrestore
