#pragma once

#include <cstdint>
#include <string>

#include "satrestore/core/crf.hpp"
#include "satrestore/core/exposure.hpp"
#include "satrestore/core/image.hpp"

namespace satrestore {

/// Sensor noise applied to the normalized exposure E * dt before the CRF.
struct NoiseModel {
    enum class Kind { None, GaussianPoisson };

    Kind kind = Kind::None;
    /// Read-noise standard deviation, in units of full scale.
    double read_sigma = 0.002;
    /// Electrons at full scale; shot noise is Poisson(gain * x) / gain.
    double gain = 4000.0;
    std::uint64_t seed = 1;

    static NoiseModel none() { return {}; }
    static NoiseModel gaussian_poisson(double read_sigma, double gain, std::uint64_t seed);
};

NoiseModel::Kind parse_noise_kind(const std::string& name);

/// z = quantize(f(clip(E * dt, 0, 1))), with optional noise on E * dt.
LdrImage virtual_camera(const RadianceImage& rad, const Crf& crf, double dt, const NoiseModel& noise = {});

/// Ground-truth captures at cfg.dt0, cfg.dt1 and cfg.dt2. Each capture draws
/// its noise from a stream derived from noise.seed and the capture index.
ExposureTriplet make_triplet(const RadianceImage& rad, const Crf& crf, const ExposureConfig& cfg,
                             const NoiseModel& noise = {});

}  // namespace satrestore
