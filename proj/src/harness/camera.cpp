#include "satrestore/harness/camera.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "satrestore/core/error.hpp"

namespace satrestore {

NoiseModel NoiseModel::gaussian_poisson(double read_sigma, double gain, std::uint64_t seed) {
    NoiseModel n;
    n.kind = Kind::GaussianPoisson;
    n.read_sigma = read_sigma;
    n.gain = gain;
    n.seed = seed;
    return n;
}

NoiseModel::Kind parse_noise_kind(const std::string& name) {
    if (name == "none") return NoiseModel::Kind::None;
    if (name == "gaussian-poisson") return NoiseModel::Kind::GaussianPoisson;
    throw Error("unknown noise model '" + name + "' (expected none or gaussian-poisson)");
}

LdrImage virtual_camera(const RadianceImage& rad, const Crf& crf, double dt, const NoiseModel& noise) {
    if (rad.channels() != 3) throw ShapeError("virtual_camera: radiance must have 3 channels");
    if (!(dt >= 0.0) || !std::isfinite(dt)) throw Error("virtual_camera: exposure time must be finite and >= 0");
    const bool noisy = noise.kind == NoiseModel::Kind::GaussianPoisson;
    if (noisy && (!(noise.gain > 0.0) || !(noise.read_sigma >= 0.0))) {
        throw Error("virtual_camera: noise gain must be > 0 and read sigma >= 0");
    }
    std::mt19937_64 rng(noise.seed);
    std::normal_distribution<double> read(0.0, noisy ? noise.read_sigma : 0.0);

    LdrImage out(rad.width(), rad.height(), 3, 0);
    const auto src = rad.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double e = src[i];
        if (!std::isfinite(e) || e < 0.0) throw Error("virtual_camera: radiance must be finite and >= 0");
        double x = e * dt;
        if (noisy) {
            const double electrons = std::min(x, 2.0) * noise.gain;
            std::poisson_distribution<long long> shot(electrons);
            x = (electrons > 0.0 ? static_cast<double>(shot(rng)) / noise.gain : 0.0) + read(rng);
        }
        dst[i] = quantize(crf.apply(std::clamp(x, 0.0, 1.0), static_cast<int>(i % 3)));
    }
    return out;
}

ExposureTriplet make_triplet(const RadianceImage& rad, const Crf& crf, const ExposureConfig& cfg,
                             const NoiseModel& noise) {
    cfg.validate();
    ExposureTriplet t;
    t.role = ExposureTriplet::Role::GroundTruth;
    t.times = {cfg.dt0, cfg.dt1, cfg.dt2};
    for (int j = 0; j < 3; ++j) {
        NoiseModel n = noise;
        n.seed = noise.seed * 3 + static_cast<std::uint64_t>(j);
        t.images[j] = virtual_camera(rad, crf, t.times[j], n);
    }
    return t;
}

}  // namespace satrestore
