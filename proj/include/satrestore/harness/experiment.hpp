#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "satrestore/core/config.hpp"
#include "satrestore/core/crf.hpp"
#include "satrestore/core/exposure.hpp"
#include "satrestore/harness/camera.hpp"
#include "satrestore/harness/pipeline.hpp"

namespace satrestore {

struct ExperimentConfig {
    int scenes = 20;
    std::uint64_t seed = 7;
    int width = 512;
    int height = 512;
    double dynamic_range = 1e4;
    ExposureConfig exposure{};
    Crf crf = Crf::gamma(2.2);
    PipelineOptions pipeline{};
    std::string refiner = "identity";
    NoiseModel noise{};
    /// 0 picks std::thread::hardware_concurrency().
    int threads = 0;
    double min_mef_ssim = 0.90;
    double min_case1_fidelity = 0.99;

    /// Keys: scenes, seed, width, height, dynamic_range, dt0, dt1, dt2, xi_u,
    /// xi_l, gamma | crf_path, mode, bright_xi_l, bright_xi_u, extra_levels,
    /// refiner, noise, read_sigma, gain, threads, min_mef_ssim,
    /// min_case1_fidelity. Unknown keys are rejected.
    static ExperimentConfig from(const KeyValueConfig& kv);
};

struct SceneRow {
    int index = 0;
    std::uint64_t seed = 0;
    double dynamic_range = 0.0;
    double ssim_low = 0.0;
    double ssim_high = 0.0;
    double psnr_low = 0.0;
    double psnr_high = 0.0;
    double mef_ssim = 0.0;
    double mse_hdr = 0.0;
    double case1_dark_fidelity = 0.0;
    double case1_bright_fidelity = 0.0;
};

struct ThresholdCheck {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct ExperimentReport {
    std::vector<SceneRow> rows;
    SceneRow average;  ///< index -1, seed 0
    std::vector<ThresholdCheck> checks;

    bool passed() const noexcept;
    /// Stable JSON text (same input, same bytes).
    std::string to_json() const;
    std::string to_text() const;
};

/// Seed of scene `index` in a suite seeded with `suite_seed`.
std::uint64_t scene_seed(std::uint64_t suite_seed, int index) noexcept;

/// Fraction of Case-1 pixels whose synthesized channels are all within
/// `tolerance` levels of the ground truth. Dark Case 1: every channel of z1
/// <= xi; bright Case 1: every channel of z1 >= xi. Returns 1 when there are
/// no Case-1 pixels.
double case1_fidelity(const LdrImage& z1, const LdrImage& synthesized, const LdrImage& truth, bool dark, int xi,
                      int tolerance = 2);

SceneRow evaluate_scene(const ExperimentConfig& cfg, int index);

/// Scenes run on a worker pool; rows are stored by index so the report does
/// not depend on scheduling.
ExperimentReport run_experiment(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const std::string& config_path);

}  // namespace satrestore
