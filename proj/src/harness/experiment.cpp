#include "satrestore/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "satrestore/harness/scene.hpp"
#include "satrestore/objective/mef_ssim.hpp"
#include "satrestore/objective/metrics.hpp"

namespace satrestore {

namespace {

const std::set<std::string> kKnownKeys = {
    "scenes",  "seed",      "width",       "height",      "dynamic_range", "dt0",      "dt1",
    "dt2",     "xi_u",      "xi_l",        "gamma",       "crf_path",      "mode",     "bright_xi_l",
    "bright_xi_u", "extra_levels", "refiner", "noise", "read_sigma", "gain", "threads",
    "min_mef_ssim", "min_case1_fidelity"};

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int positive_int(const KeyValueConfig& kv, const std::string& key, long fallback) {
    const long v = kv.get_int(key, fallback);
    if (v < 1 || v > 1 << 20) throw ParseError(kv.source(), "key '" + key + "'", "must be a positive integer");
    return static_cast<int>(v);
}

double hdr_mse(const RadianceImage& estimate, const RadianceImage& truth) {
    const auto t = truth.data();
    const double peak = *std::ranges::max_element(t);
    if (!(peak > 0.0)) return 0.0;
    const auto e = estimate.data();
    double acc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double d = (e[i] - t[i]) / peak;
        acc += d * d;
    }
    return acc / static_cast<double>(t.size());
}

nlohmann::ordered_json row_json(const SceneRow& r) {
    nlohmann::ordered_json j;
    if (r.index >= 0) {
        j["scene"] = r.index;
        j["seed"] = r.seed;
        j["dynamic_range"] = r.dynamic_range;
    }
    j["ssim_low"] = r.ssim_low;
    j["ssim_high"] = r.ssim_high;
    j["psnr_low"] = r.psnr_low;
    j["psnr_high"] = r.psnr_high;
    j["mef_ssim"] = r.mef_ssim;
    j["mse_hdr"] = r.mse_hdr;
    j["case1_dark_fidelity"] = r.case1_dark_fidelity;
    j["case1_bright_fidelity"] = r.case1_bright_fidelity;
    return j;
}

}  // namespace

ExperimentConfig ExperimentConfig::from(const KeyValueConfig& kv) {
    for (const auto& [key, value] : kv.values()) {
        if (!kKnownKeys.count(key)) throw ParseError(kv.source(), "key '" + key + "'", "unknown key");
    }
    ExperimentConfig cfg;
    cfg.scenes = positive_int(kv, "scenes", cfg.scenes);
    const long seed = kv.get_int("seed", static_cast<long>(cfg.seed));
    if (seed < 0) throw ParseError(kv.source(), "key 'seed'", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.width = positive_int(kv, "width", cfg.width);
    cfg.height = positive_int(kv, "height", cfg.height);
    cfg.dynamic_range = kv.get_double("dynamic_range", cfg.dynamic_range);
    cfg.exposure = exposure_config_from(kv);
    cfg.crf = crf_from(kv);
    if (const auto mode = kv.get("mode")) cfg.pipeline.synthesis.mode = parse_weight_mode(*mode);
    cfg.pipeline.synthesis.bright_xi_l = static_cast<int>(kv.get_int("bright_xi_l", cfg.pipeline.synthesis.bright_xi_l));
    cfg.pipeline.synthesis.bright_xi_u = static_cast<int>(kv.get_int("bright_xi_u", cfg.pipeline.synthesis.bright_xi_u));
    cfg.pipeline.fusion.extra_levels = static_cast<int>(kv.get_int("extra_levels", cfg.pipeline.fusion.extra_levels));
    cfg.refiner = kv.get_or("refiner", cfg.refiner);
    make_refiner(cfg.refiner);
    cfg.noise.kind = parse_noise_kind(kv.get_or("noise", "none"));
    cfg.noise.read_sigma = kv.get_double("read_sigma", cfg.noise.read_sigma);
    cfg.noise.gain = kv.get_double("gain", cfg.noise.gain);
    cfg.threads = static_cast<int>(kv.get_int("threads", 0));
    cfg.min_mef_ssim = kv.get_double("min_mef_ssim", cfg.min_mef_ssim);
    cfg.min_case1_fidelity = kv.get_double("min_case1_fidelity", cfg.min_case1_fidelity);
    return cfg;
}

std::uint64_t scene_seed(std::uint64_t suite_seed, int index) noexcept {
    return splitmix64(splitmix64(suite_seed) + static_cast<std::uint64_t>(index));
}

double case1_fidelity(const LdrImage& z1, const LdrImage& synthesized, const LdrImage& truth, bool dark, int xi,
                      int tolerance) {
    require_same_shape(z1, synthesized, "case1_fidelity");
    require_same_shape(z1, truth, "case1_fidelity");
    long total = 0;
    long good = 0;
    for (int y = 0; y < z1.height(); ++y) {
        for (int x = 0; x < z1.width(); ++x) {
            const std::uint8_t* p = z1.pixel(x, y);
            bool case1 = true;
            for (int c = 0; c < z1.channels(); ++c) case1 = case1 && (dark ? p[c] <= xi : p[c] >= xi);
            if (!case1) continue;
            ++total;
            bool ok = true;
            for (int c = 0; c < z1.channels(); ++c) {
                ok = ok && std::abs(int(synthesized.at(x, y, c)) - int(truth.at(x, y, c))) <= tolerance;
            }
            good += ok;
        }
    }
    return total == 0 ? 1.0 : static_cast<double>(good) / static_cast<double>(total);
}

SceneRow evaluate_scene(const ExperimentConfig& cfg, int index) {
    SceneRow row;
    row.index = index;
    row.seed = scene_seed(cfg.seed, index);
    const SceneSpec spec = random_scene(row.seed, cfg.width, cfg.height, cfg.dynamic_range);
    const RadianceImage rad = generate_scene(spec);
    row.dynamic_range = dynamic_range_of(rad);

    NoiseModel noise = cfg.noise;
    noise.seed = splitmix64(row.seed ^ 0x6e6f697365ULL);
    const ExposureTriplet truth = make_triplet(rad, cfg.crf, cfg.exposure, noise);

    const auto refiner = make_refiner(cfg.refiner);
    RefinerParams dark_params{&truth.dark()};
    RefinerParams bright_params{&truth.bright()};
    const PipelineResult out =
        restore_pipeline(truth.input(), cfg.crf, cfg.exposure, *refiner, cfg.pipeline, dark_params, bright_params);

    row.ssim_low = ssim(out.z0, truth.dark());
    row.ssim_high = ssim(out.z2, truth.bright());
    row.psnr_low = psnr(out.z0, truth.dark());
    row.psnr_high = psnr(out.z2, truth.bright());
    row.mef_ssim = mef_ssim(out.fused, truth);
    row.mse_hdr = out.hdr ? hdr_mse(*out.hdr, rad) : 0.0;
    row.case1_dark_fidelity = case1_fidelity(truth.input(), out.z0_initial, truth.dark(), true, cfg.exposure.xi_u);
    row.case1_bright_fidelity = case1_fidelity(truth.input(), out.z2_initial, truth.bright(), false,
                                               cfg.pipeline.synthesis.bright_xi_l);
    return row;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.rows.resize(static_cast<std::size_t>(cfg.scenes));

    int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, cfg.scenes);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (int i = next++; i < cfg.scenes; i = next++) {
            try {
                report.rows[static_cast<std::size_t>(i)] = evaluate_scene(cfg, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cfg.scenes;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    SceneRow& avg = report.average;
    avg.index = -1;
    const double n = static_cast<double>(report.rows.size());
    for (const auto& r : report.rows) {
        avg.dynamic_range += r.dynamic_range / n;
        avg.ssim_low += r.ssim_low / n;
        avg.ssim_high += r.ssim_high / n;
        avg.psnr_low += r.psnr_low / n;
        avg.psnr_high += r.psnr_high / n;
        avg.mef_ssim += r.mef_ssim / n;
        avg.mse_hdr += r.mse_hdr / n;
        avg.case1_dark_fidelity += r.case1_dark_fidelity / n;
        avg.case1_bright_fidelity += r.case1_bright_fidelity / n;
    }

    report.checks.push_back({"mef_ssim_average", avg.mef_ssim, cfg.min_mef_ssim, avg.mef_ssim >= cfg.min_mef_ssim});
    double worst_dark = 1.0;
    double worst_bright = 1.0;
    for (const auto& r : report.rows) {
        worst_dark = std::min(worst_dark, r.case1_dark_fidelity);
        worst_bright = std::min(worst_bright, r.case1_bright_fidelity);
    }
    report.checks.push_back(
        {"case1_dark_fidelity_min", worst_dark, cfg.min_case1_fidelity, worst_dark >= cfg.min_case1_fidelity});
    report.checks.push_back(
        {"case1_bright_fidelity_min", worst_bright, cfg.min_case1_fidelity, worst_bright >= cfg.min_case1_fidelity});
    return report;
}

ExperimentReport run_experiment(const std::string& config_path) {
    return run_experiment(ExperimentConfig::from(KeyValueConfig::load(config_path)));
}

bool ExperimentReport::passed() const noexcept {
    return std::ranges::all_of(checks, [](const ThresholdCheck& c) { return c.passed; });
}

std::string ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["scenes"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) j["scenes"].push_back(row_json(r));
    j["average"] = row_json(average);
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"passed", c.passed}});
    }
    j["passed"] = passed();
    return j.dump(2) + "\n";
}

std::string ExperimentReport::to_text() const {
    std::ostringstream out;
    out << std::fixed;
    out << "scene  ssim_low  ssim_high  psnr_low  psnr_high  mef_ssim   mse_hdr\n";
    auto line = [&](const std::string& label, const SceneRow& r) {
        out << std::left << std::setw(7) << label << std::right << std::setprecision(4) << std::setw(8)
            << r.ssim_low << std::setw(11) << r.ssim_high << std::setprecision(2) << std::setw(10) << r.psnr_low
            << std::setw(11) << r.psnr_high << std::setprecision(4) << std::setw(10) << r.mef_ssim
            << std::scientific << std::setprecision(3) << std::setw(10) << r.mse_hdr << std::fixed << "\n";
    };
    for (const auto& r : rows) line(std::to_string(r.index), r);
    line("avg", average);
    for (const auto& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << " = " << std::setprecision(4) << c.value
            << " (threshold " << c.threshold << ")\n";
    }
    return out.str();
}

}  // namespace satrestore
