// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "satrestore/fuse/hdr_merge.hpp"
#include "satrestore/fuse/mef_fusion.hpp"
#include "satrestore/fuse/pyramid.hpp"
#include "satrestore/fuse/weights.hpp"
#include "satrestore/harness/camera.hpp"
#include "satrestore/harness/experiment.hpp"
#include "satrestore/harness/scene.hpp"
#include "satrestore/nonlocal/nonlocal.hpp"
#include "satrestore/objective/feature_extractor.hpp"
#include "satrestore/objective/losses.hpp"
#include "satrestore/objective/mef_ssim.hpp"
#include "satrestore/synthgen/synthesis.hpp"
#include "test_util.hpp"

using namespace satrestore;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

constexpr std::uint64_t kSuiteSeed = 7;
constexpr int kSuiteScenes = 20;
constexpr int kSuiteSize = 512;

ExperimentConfig suite_config() {
    ExperimentConfig cfg;
    cfg.scenes = kSuiteScenes;
    cfg.seed = kSuiteSeed;
    cfg.width = kSuiteSize;
    cfg.height = kSuiteSize;
    return cfg;
}

Outcome crf_round_trip() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Crf f = Crf::tabulated(testutil::random_crf_table(rng));
        for (int c = 0; c < 3; ++c)
            for (int z = 0; z < 256; ++z) worst = std::max(worst, std::abs(f.apply(f.invert(z, c), c) - z));
    }
    const double secs = seconds_since(t0);
    o.require(worst <= 0.5, "max error " + fmt("%.3g", worst));
    o.require(secs < 1.0, "runtime " + fmt("%.3f s", secs));
    o.note("max |f(f^-1(z)) - z| = " + fmt("%.3g", worst) + ", " + fmt("%.3f s", secs));
    return o;
}

Outcome imf_linearity() {
    Outcome o;
    double worst = 0.0;
    for (double g : {1.0, 1.8, 2.2, 2.4}) {
        const Crf f = Crf::gamma(g);
        for (double k : {0.25, 4.0}) {
            const ImfLut imf = build_imf(f, 1.0, k);
            const double slope = std::pow(k, 1.0 / g);
            for (int c = 0; c < 3; ++c)
                for (int z = 0; z < 256; ++z) {
                    if (slope * z > 255.0) continue;
                    worst = std::max(worst, std::abs(imf(z, c) - slope * z));
                }
        }
    }
    o.require(worst <= 0.5, "max deviation " + fmt("%.3g", worst));
    o.note("max |imf(z) - k^(1/g) z| = " + fmt("%.3g", worst));
    return o;
}

Outcome fixed_ratio_oracle() {
    Outcome o;
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> any(0, 255), high(251, 255);
    std::uniform_real_distribution<double> gam(1.0, 2.6);
    double worst = 0.0, worst_gamma = 0.0;
    int cases = 0;
    while (cases < 1000) {
        const bool gamma_case = cases % 2 == 0;
        const double g = gam(rng);
        const Crf f = gamma_case ? Crf::gamma(g) : Crf::tabulated(testutil::random_crf_table(rng));
        const bool smooth = cases % 3 == 0;
        const ImfLut imf = build_imf(f, 1.0, 0.25);
        Rgb8 px{};
        for (int c = 0; c < 3; ++c) px[c] = static_cast<std::uint8_t>(any(rng));
        px[cases % 3] = static_cast<std::uint8_t>(high(rng));  // Case-2 pixel
        std::array<double, 3> z{}, t{}, w{};
        for (int c = 0; c < 3; ++c) {
            z[c] = px[c];
            t[c] = imf(px[c], c);
            w[c] = oracle::dark_weight(px[c], 250, 200, smooth);
        }
        if (w[0] * z[0] + w[1] * z[1] + w[2] * z[2] == 0.0) continue;
        const double got = fixed_ratio(px, imf, 250, 200, smooth ? WeightMode::Smooth : WeightMode::Verbatim);
        worst = std::max(worst, std::abs(got - oracle::minimize_ratio(z, t, w)));
        if (gamma_case) worst_gamma = std::max(worst_gamma, std::abs(got - std::pow(0.25, 1.0 / g)));
        ++cases;
    }
    o.require(worst <= 1e-6, "oracle gap " + fmt("%.3g", worst));
    o.require(worst_gamma <= 1e-6, "gamma gap " + fmt("%.3g", worst_gamma));
    o.note("1000 cases, max |closed - brute| = " + fmt("%.3g", worst) + ", max gamma gap = " + fmt("%.3g", worst_gamma));
    return o;
}

Outcome case1_fidelity_suite() {
    Outcome o;
    const ExperimentConfig cfg = suite_config();
    const SynthesisOptions opts;
    double worst_dark = 1.0, worst_bright = 1.0, worst_time = 0.0;
    for (int i = 0; i < cfg.scenes; ++i) {
        const RadianceImage rad = generate_scene(random_scene(scene_seed(cfg.seed, i), cfg.width, cfg.height));
        const ExposureTriplet t = make_triplet(rad, cfg.crf, cfg.exposure);
        const auto t0 = Clock::now();
        const LdrImage z0 = synthesize_dark_detailed(t.input(), cfg.crf, cfg.exposure, opts).image;
        const LdrImage z2 = synthesize_bright_detailed(t.input(), cfg.crf, cfg.exposure, opts).image;
        worst_time = std::max(worst_time, seconds_since(t0));
        worst_dark = std::min(worst_dark, case1_fidelity(t.input(), z0, t.dark(), true, cfg.exposure.xi_u));
        worst_bright = std::min(worst_bright, case1_fidelity(t.input(), z2, t.bright(), false, opts.bright_xi_l));
    }
    o.require(worst_dark >= 0.99, "dark fidelity " + fmt("%.4f", worst_dark));
    o.require(worst_bright >= 0.99, "bright fidelity " + fmt("%.4f", worst_bright));
    o.require(worst_time < 1.0, "synthesis time " + fmt("%.3f s", worst_time));
    o.note("worst-scene fidelity dark " + fmt("%.4f", worst_dark) + ", bright " + fmt("%.4f", worst_bright) +
           ", slowest synthesis " + fmt("%.3f s", worst_time));
    return o;
}

Outcome nonlocal_modules() {
    Outcome o;
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> dim(1, 8);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    double worst = 0.0, worst_row = 0.0;
    bool exact = true;
    for (int t = 0; t < 100; ++t) {
        FeatureMap x(dim(rng), dim(rng), dim(rng));
        for (auto& v : x.data()) v = val(rng);
        NdmParams p = NdmParams::zeros(x.channels());
        for (auto* k : {&p.key, &p.query, &p.value})
            for (auto& v : *k) v = 0.5 * val(rng);
        const FeatureMap s = nonlocal_spatial(x, p);
        const FeatureMap so = oracle::spatial(x, p.key, p.query, p.value);
        const FeatureMap c = nonlocal_channel(x);
        const FeatureMap co = oracle::channel(x);
        for (std::size_t i = 0; i < s.data().size(); ++i) {
            worst = std::max(worst, std::abs(s.data()[i] - so.data()[i]));
            worst = std::max(worst, std::abs(c.data()[i] - co.data()[i]));
        }
        const auto ss = spatial_similarity(x, p);
        const int n = x.positions();
        for (int j = 0; j < n; ++j)
            worst_row = std::max(worst_row, std::abs(std::accumulate(ss.begin() + j * n, ss.begin() + (j + 1) * n, 0.0) - 1.0));
        const auto cs = channel_similarity(x);
        const int cc = x.channels();
        for (int j = 0; j < cc; ++j)
            worst_row = std::max(worst_row, std::abs(std::accumulate(cs.begin() + j * cc, cs.begin() + (j + 1) * cc, 0.0) - 1.0));

        NdmParams novalue = p;
        novalue.value.assign(novalue.value.size(), 0.0);
        exact = exact && nonlocal_spatial(x, novalue) == x;
        FeatureMap one(1, x.height(), x.width());
        std::copy(x.plane(0).begin(), x.plane(0).end(), one.plane(0).begin());
        const FeatureMap doubled = nonlocal_channel(one);
        for (std::size_t i = 0; i < one.data().size(); ++i) exact = exact && doubled.data()[i] == 2.0 * one.data()[i];
    }
    o.require(worst <= 1e-6, "oracle gap " + fmt("%.3g", worst));
    o.require(worst_row <= 1e-9, "row sum error " + fmt("%.3g", worst_row));
    o.require(exact, "residual identity or C=1 doubling not exact");
    o.note("max oracle gap " + fmt("%.3g", worst) + ", max row-sum error " + fmt("%.3g", worst_row));
    return o;
}

Outcome losses() {
    Outcome o;
    std::mt19937_64 rng(404);
    const KernelBankExtractor fx;
    const LdrImage t = testutil::random_ldr(16, 12, rng);
    const FloatImage zero(16, 12, 3, 0.0);
    const auto same = loss_components(t, t, zero, fx, {2, 2}, LossWeights{});
    o.require(same.restoration == 0.0 && same.color == 0.0 && same.feature == 0.0, "nonzero loss on identical inputs");
    const double w3 = restoration_weight(3, 6.0);
    o.require(std::abs(w3 - 1.0 / 3.0) <= 1e-15, "W(3) = " + fmt("%.17g", w3));

    const FloatImage a = testutil::random_float(16, 12, 3, rng, 0.0, 255.0);
    const FloatImage b = testutil::random_float(16, 12, 3, rng, 0.0, 255.0);
    FloatImage bs = b;
    std::uniform_real_distribution<double> s(0.01, 100.0);
    for (int y = 0; y < 12; ++y)
        for (int x = 0; x < 16; ++x) {
            const double k = s(rng);
            for (int c = 0; c < 3; ++c) bs.at(x, y, c) *= k;
        }
    const double inv = std::abs(color_angle_loss(a, b) - color_angle_loss(a, bs));
    o.require(inv <= 1e-9, "scale invariance gap " + fmt("%.3g", inv));

    // One pixel: target (10,20,30), base (8,20,30), zero residual.
    LdrImage tt(1, 1, 3), bb(1, 1, 3);
    tt.at(0, 0, 0) = 10;
    tt.at(0, 0, 1) = 20;
    tt.at(0, 0, 2) = 30;
    bb = tt;
    bb.at(0, 0, 0) = 8;
    const double cx = 20.0 * 30 - 30.0 * 20, cy = 30.0 * 8 - 10.0 * 30, cz = 10.0 * 20 - 20.0 * 8;
    const double lc = std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), 10.0 * 8 + 20.0 * 20 + 30.0 * 30);
    const double expect = 4.0 + 0.01 * lc + 0.01 * ((2.0 / 255.0) * (2.0 / 255.0) / 3.0);
    const double got = total_loss(tt, bb, FloatImage(1, 1, 3, 0.0), fx, {1, 1});
    o.require(std::abs(got - expect) <= 1e-12, "hand-computed total off by " + fmt("%.3g", std::abs(got - expect)));
    const double unit = total_loss({1.0, 1.0, 1.0}, LossWeights{});
    o.require(std::abs(unit - 1.02) <= 1e-12, "unit components give " + fmt("%.17g", unit));
    o.note("W(3) = " + fmt("%.6f", w3) + ", scale gap " + fmt("%.3g", inv) + ", total gap " +
           fmt("%.3g", std::abs(got - expect)));
    return o;
}

Outcome fusion() {
    Outcome o;
    std::mt19937_64 rng(505);
    double worst_sum = 0.0, worst_pyr = 0.0;
    long within = 0, total = 0;
    for (int t = 0; t < 5; ++t) {
        const int w = 33 + 17 * t, h = 24 + 11 * t;
        const LdrImage z0 = testutil::random_ldr(w, h, rng, 0, 120);
        const LdrImage z1 = testutil::random_ldr(w, h, rng);
        const LdrImage z2 = testutil::random_ldr(w, h, rng, 120, 255);
        const WeightMaps m = combined_weights(z0, z1, z2);
        for (std::size_t i = 0; i < m.w[0].size(); ++i)
            worst_sum = std::max(worst_sum, std::abs(m.w[0].data()[i] + m.w[1].data()[i] + m.w[2].data()[i] - 1.0));
        const LdrImage f = mef_fuse(z1, z1, z1);
        for (std::size_t i = 0; i < f.size(); ++i) within += std::abs(int(f.data()[i]) - int(z1.data()[i])) <= 1;
        total += static_cast<long>(f.size());
        const FloatImage img = to_float(z1);
        for (int levels = 1; levels <= max_pyramid_levels(w, h); ++levels) {
            const FloatImage back = collapse(laplacian_pyramid(img, levels));
            for (std::size_t i = 0; i < img.size(); ++i)
                worst_pyr = std::max(worst_pyr, std::abs(back.data()[i] - img.data()[i]));
        }
    }
    const double frac = static_cast<double>(within) / total;
    o.require(worst_sum <= 1e-6, "weight sum error " + fmt("%.3g", worst_sum));
    o.require(frac >= 0.999, "identical-triplet fidelity " + fmt("%.5f", frac));
    o.require(worst_pyr <= 1e-6, "pyramid round trip " + fmt("%.3g", worst_pyr));
    o.note("weight sum error " + fmt("%.3g", worst_sum) + ", within 1 level " + fmt("%.5f", frac) +
           ", pyramid error " + fmt("%.3g", worst_pyr));
    return o;
}

Outcome hdr_merge_check() {
    Outcome o;
    const ExperimentConfig cfg = suite_config();
    long eligible = 0, good = 0, within_bound = 0;
    double worst = 0.0;
    for (int i = 0; i < cfg.scenes; ++i) {
        const RadianceImage rad = generate_scene(random_scene(scene_seed(cfg.seed, i), cfg.width, cfg.height));
        const ExposureTriplet t = make_triplet(rad, cfg.crf, cfg.exposure);
        const RadianceImage e = hdr_merge(t, cfg.crf);
        for (int y = 0; y < rad.height(); ++y)
            for (int x = 0; x < rad.width(); ++x)
                for (int c = 0; c < 3; ++c) {
                    // A blend of unclipped samples is off by at most the worst sample's half-level error.
                    const double g = cfg.crf.gamma_value();
                    double bound = -1.0;
                    for (int j = 0; j < 3; ++j) {
                        const int z = t.images[j].at(x, y, c);
                        if (z > 0 && z < 255) bound = std::max(bound, std::pow(z / (z - 0.5), g) - 1.0);
                    }
                    if (bound < 0.0) continue;
                    ++eligible;
                    const double truth = rad.at(x, y, c);
                    const double rel = std::abs(e.at(x, y, c) - truth) / truth;
                    worst = std::max(worst, rel);
                    good += rel < 0.01;
                    within_bound += rel <= bound + 1e-12;
                }
    }
    const double frac = static_cast<double>(good) / eligible;

    std::mt19937_64 rng(606);
    const std::array<LdrImage, 3> imgs{testutil::random_ldr(32, 32, rng), testutil::random_ldr(32, 32, rng),
                                       testutil::random_ldr(32, 32, rng)};
    const Crf f = Crf::tabulated(testutil::random_crf_table(rng));
    const std::array<double, 3> times{0.25, 1.0, 4.0};
    double worst_scale = 0.0;
    for (double s : {0.1, 2.0, 7.5}) {
        const std::array<double, 3> ts{times[0] * s, times[1] * s, times[2] * s};
        const RadianceImage a = hdr_merge(imgs, times, f);
        const RadianceImage b = hdr_merge(imgs, ts, f);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double ref = a.data()[i] / s;
            worst_scale = std::max(worst_scale, std::abs(b.data()[i] - ref) / std::max(1.0, std::abs(ref)));
        }
    }
    o.require(good == eligible, fmt("%.4f", frac) + " of eligible samples under 1% (max " + fmt("%.3g", worst) + ")");
    o.require(worst_scale <= 1e-12, "rescaling gap " + fmt("%.3g", worst_scale));
    o.note(fmt("%.5f", static_cast<double>(within_bound) / eligible) +
           " within the half-level quantization bound; rescaling gap " + fmt("%.3g", worst_scale));
    return o;
}

Outcome mef_ssim_check(const ExperimentReport& report) {
    Outcome o;
    std::mt19937_64 rng(707);
    double worst_self = 0.0, worst_oracle = 0.0;
    for (int t = 0; t < 5; ++t) {
        const LdrImage x = testutil::random_ldr(24 + t, 20 + t, rng);
        worst_self = std::max(worst_self, std::abs(mef_ssim(x, std::vector<LdrImage>{x}) - 1.0));
        worst_self = std::max(worst_self, std::abs(mef_ssim(x, std::vector<LdrImage>{x, x, x}) - 1.0));
        const std::vector<LdrImage> refs{testutil::random_ldr(16, 16, rng, 0, 110), testutil::random_ldr(16, 16, rng, 50, 200),
                                         testutil::random_ldr(16, 16, rng, 140, 255)};
        const LdrImage fused = mef_fuse(refs[0], refs[1], refs[2]);
        worst_oracle = std::max(worst_oracle, std::abs(mef_ssim(fused, refs) - oracle::mef_ssim(fused, refs)));
    }
    const double avg = report.average.mef_ssim;
    o.require(worst_self <= 1e-6, "self-score gap " + fmt("%.3g", worst_self));
    o.require(worst_oracle <= 1e-9, "oracle gap " + fmt("%.3g", worst_oracle));
    o.require(avg >= 0.90, "suite average " + fmt("%.4f", avg));
    o.note("self gap " + fmt("%.3g", worst_self) + ", oracle gap " + fmt("%.3g", worst_oracle) +
           ", model-based suite average " + fmt("%.4f", avg));
    return o;
}

Outcome determinism(const ExperimentReport& first, double first_secs) {
    Outcome o;
    const auto t0 = Clock::now();
    const ExperimentReport second = run_experiment(suite_config());
    const double secs = seconds_since(t0);
    o.require(first.to_json() == second.to_json(), "reports differ");
    o.require(std::max(first_secs, secs) < 120.0, "suite runtime " + fmt("%.1f s", std::max(first_secs, secs)));
    o.note("identical reports, runtimes " + fmt("%.1f s", first_secs) + " / " + fmt("%.1f s", secs));
    return o;
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += !o.pass;
        std::printf("[%s] %2d %-28s %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
    };

    report(1, "crf round trip", crf_round_trip);
    report(2, "imf gamma linearity", imf_linearity);
    report(3, "fixed-ratio oracle", fixed_ratio_oracle);
    report(4, "case-1 fidelity", case1_fidelity_suite);
    report(5, "non-local modules", nonlocal_modules);
    report(6, "losses", losses);
    report(7, "fusion", fusion);
    report(8, "hdr merge", hdr_merge_check);

    const auto t0 = Clock::now();
    ExperimentReport suite;
    std::string suite_error;
    try {
        suite = run_experiment(suite_config());
    } catch (const std::exception& e) {
        suite_error = e.what();
    }
    const double suite_secs = seconds_since(t0);
    auto needs_suite = [&](const std::function<Outcome()>& fn) {
        return [&, fn] {
            if (!suite_error.empty()) throw Error("suite run failed: " + suite_error);
            return fn();
        };
    };
    report(9, "mef-ssim", needs_suite([&] { return mef_ssim_check(suite); }));
    report(10, "end-to-end determinism", needs_suite([&] { return determinism(suite, suite_secs); }));

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
