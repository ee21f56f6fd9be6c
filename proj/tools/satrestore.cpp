// satrestore: command line front end.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "satrestore/core/config.hpp"
#include "satrestore/core/image_io.hpp"
#include "satrestore/exposedness/masks.hpp"
#include "satrestore/fuse/hdr_merge.hpp"
#include "satrestore/fuse/mef_fusion.hpp"
#include "satrestore/harness/camera.hpp"
#include "satrestore/harness/experiment.hpp"
#include "satrestore/harness/pipeline.hpp"
#include "satrestore/harness/scene.hpp"
#include "satrestore/objective/losses.hpp"
#include "satrestore/objective/mef_ssim.hpp"
#include "satrestore/objective/metrics.hpp"
#include "satrestore/synthgen/synthesis.hpp"

namespace fs = std::filesystem;
using namespace satrestore;

namespace {

struct ExposureArgs {
    double dt1 = 1.0;
    double ratio = 4.0;
    int xi_u = 250;
    int xi_l = 200;

    void add(CLI::App* app) {
        app->add_option("--dt1", dt1, "Exposure time of the input image")->capture_default_str();
        app->add_option("--ratio", ratio, "Exposure ratio between neighbouring images")->capture_default_str();
        app->add_option("--xi-u", xi_u, "Unreliable threshold for darkening")->capture_default_str();
        app->add_option("--xi-l", xi_l, "Reliable threshold for darkening")->capture_default_str();
    }
    ExposureConfig config() const {
        ExposureConfig cfg = ExposureConfig::from_ratio(dt1, ratio);
        cfg.xi_u = xi_u;
        cfg.xi_l = xi_l;
        cfg.validate();
        return cfg;
    }
};

struct SynthArgs {
    std::string mode = "verbatim";
    int bright_xi_l = 5;
    int bright_xi_u = 55;

    void add(CLI::App* app) {
        app->add_option("--mode", mode, "Weight shape: verbatim or smooth")
            ->check(CLI::IsMember({"verbatim", "smooth"}))
            ->capture_default_str();
        app->add_option("--bright-xi-l", bright_xi_l, "Bright-side lower threshold")->capture_default_str();
        app->add_option("--bright-xi-u", bright_xi_u, "Bright-side upper threshold")->capture_default_str();
    }
    SynthesisOptions options() const { return {parse_weight_mode(mode), bright_xi_l, bright_xi_u}; }
};

void run_synth(const std::string& input, const std::string& crf_spec, const ExposureArgs& ex, const SynthArgs& sa,
               const std::string& out_dark, const std::string& out_bright, const std::string& gamma_map) {
    const LdrImage z1 = read_png(input);
    const Crf crf = Crf::from_spec(crf_spec);
    const ExposureConfig cfg = ex.config();
    const auto dark = synthesize_dark_detailed(z1, crf, cfg, sa.options());
    const auto bright = synthesize_bright_detailed(z1, crf, cfg, sa.options());
    if (!out_dark.empty()) write_png(out_dark, dark.image);
    if (!out_bright.empty()) write_png(out_bright, bright.image);
    if (!gamma_map.empty()) {
        FloatImage map(z1.width(), z1.height(), 3, 0.0);
        for (int y = 0; y < z1.height(); ++y)
            for (int x = 0; x < z1.width(); ++x) {
                map.at(x, y, 0) = dark.ratio.at(x, y, 0);
                map.at(x, y, 1) = bright.ratio.at(x, y, 0);
            }
        write_pfm(gamma_map, map);
    }
}

void run_masks(const std::string& input, int xi_u, int xi_l, const std::string& out_m0, const std::string& out_m2) {
    const LdrImage z1 = read_png(input);
    const auto masks = compute_masks(z1, xi_u, xi_l);
    if (!out_m0.empty()) write_mask_png(out_m0, masks.m0);
    if (!out_m2.empty()) write_mask_png(out_m2, masks.m2);
}

int run_metrics(const std::string& test_path, const std::vector<std::string>& ref_paths, const std::string& metric,
                bool json) {
    const LdrImage test = read_png(test_path);
    std::vector<LdrImage> refs;
    for (const auto& p : ref_paths) refs.push_back(read_png(p));
    nlohmann::ordered_json out;
    out["metric"] = metric;
    out["test"] = test_path;
    if (metric == "mefssim") {
        out["value"] = mef_ssim(test, refs);
    } else {
        auto per_ref = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < refs.size(); ++i) {
            double v = 0.0;
            if (metric == "ssim") v = ssim(test, refs[i]);
            else if (metric == "psnr") v = psnr(test, refs[i]);
            else if (metric == "mse") v = mse(test, refs[i]);
            else v = color_angle_loss(refs[i], to_float(test));
            per_ref.push_back({{"ref", ref_paths[i]}, {"value", v}});
        }
        out["values"] = per_ref;
    }
    if (json) {
        std::cout << out.dump(2) << "\n";
    } else if (out.contains("value")) {
        std::cout << metric << " " << out["value"].get<double>() << "\n";
    } else {
        for (const auto& r : out["values"]) {
            std::cout << metric << " " << r["ref"].get<std::string>() << " " << r["value"].get<double>() << "\n";
        }
    }
    return 0;
}

int run_loss(const std::string& target_path, const std::string& base_path, const std::string& residual_path,
             FeatureStage stage, bool mean) {
    const LdrImage target = read_png(target_path);
    const LdrImage base = read_png(base_path);
    const FloatImage residual = residual_path.empty() ? FloatImage(base.width(), base.height(), base.channels(), 0.0)
                                                      : read_pfm(residual_path);
    const KernelBankExtractor fx;
    const LossWeights weights;
    const LossComponents parts = loss_components(target, base, residual, fx, stage, weights,
                                                 mean ? Reduction::Mean : Reduction::Sum);
    nlohmann::ordered_json out;
    out["reduction"] = mean ? "mean" : "sum";
    out["feature_stage"] = fx.stage_name(stage);
    out["restoration"] = parts.restoration;
    out["color"] = parts.color;
    out["feature"] = parts.feature;
    out["total"] = total_loss(parts, weights);
    std::cout << out.dump(2) << "\n";
    return 0;
}

void run_fuse(const std::vector<std::string>& inputs, const std::string& out, int extra) {
    const LdrImage z0 = read_png(inputs[0]);
    const LdrImage z1 = read_png(inputs[1]);
    const LdrImage z2 = read_png(inputs[2]);
    FusionOptions opts;
    opts.extra_levels = extra;
    write_png(out, mef_fuse(z0, z1, z2, opts));
}

void run_merge(const std::vector<std::string>& inputs, const std::vector<double>& times, const std::string& crf_spec,
               const std::string& out) {
    if (inputs.size() != times.size()) throw Error("merge: need one exposure time per input");
    std::vector<LdrImage> images;
    for (const auto& p : inputs) images.push_back(read_png(p));
    write_pfm(out, hdr_merge(images, times, Crf::from_spec(crf_spec)));
}

struct DatasetArgs {
    int scenes = 20;
    std::uint64_t seed = 7;
    std::string out;
    int width = 512;
    int height = 512;
    double dynamic_range = 1e4;
    std::string crf = "gamma:2.2";
    std::string noise = "none";
    double read_sigma = 0.002;
    double gain = 4000.0;
};

void run_dataset_gen(const DatasetArgs& a, const ExposureArgs& ex) {
    const Crf crf = Crf::from_spec(a.crf);
    const ExposureConfig cfg = ex.config();
    fs::create_directories(a.out);
    nlohmann::ordered_json index;
    index["seed"] = a.seed;
    index["times"] = {cfg.dt0, cfg.dt1, cfg.dt2};
    index["crf"] = a.crf;
    index["scenes"] = nlohmann::ordered_json::array();
    for (int i = 0; i < a.scenes; ++i) {
        const std::uint64_t s = scene_seed(a.seed, i);
        const RadianceImage rad = generate_scene(random_scene(s, a.width, a.height, a.dynamic_range));
        NoiseModel noise;
        noise.kind = parse_noise_kind(a.noise);
        noise.read_sigma = a.read_sigma;
        noise.gain = a.gain;
        noise.seed = s;
        const ExposureTriplet t = make_triplet(rad, crf, cfg, noise);
        char name[32];
        std::snprintf(name, sizeof name, "scene_%03d", i);
        const fs::path dir = fs::path(a.out) / name;
        fs::create_directories(dir);
        write_png((dir / "zt0.png").string(), t.dark());
        write_png((dir / "z1.png").string(), t.input());
        write_png((dir / "zt2.png").string(), t.bright());
        write_pfm((dir / "radiance.pfm").string(), rad);
        index["scenes"].push_back({{"dir", name}, {"seed", s}, {"dynamic_range", dynamic_range_of(rad)}});
    }
    std::ofstream((fs::path(a.out) / "index.json").string()) << index.dump(2) << "\n";
}

struct RestoreArgs {
    std::string input;
    std::string crf = "gamma:2.2";
    std::string refiner = "identity";
    std::string out_dir;
    std::string gt_dark;
    std::string gt_bright;
    int extra_levels = 1;
    bool no_hdr = false;
};

void run_restore(const RestoreArgs& a, const ExposureArgs& ex, const SynthArgs& sa) {
    const LdrImage z1 = read_png(a.input);
    const Crf crf = Crf::from_spec(a.crf);
    const auto refiner = make_refiner(a.refiner);
    PipelineOptions opts;
    opts.synthesis = sa.options();
    opts.fusion.extra_levels = a.extra_levels;
    opts.merge_hdr = !a.no_hdr;
    LdrImage gt0, gt2;
    RefinerParams dark, bright;
    if (!a.gt_dark.empty()) {
        gt0 = read_png(a.gt_dark);
        dark.ground_truth = &gt0;
    }
    if (!a.gt_bright.empty()) {
        gt2 = read_png(a.gt_bright);
        bright.ground_truth = &gt2;
    }
    const PipelineResult r = restore_pipeline(z1, crf, ex.config(), *refiner, opts, dark, bright);
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    write_png((dir / "z0.png").string(), r.z0);
    write_png((dir / "z2.png").string(), r.z2);
    write_mask_png((dir / "m0.png").string(), r.masks.m0);
    write_mask_png((dir / "m2.png").string(), r.masks.m2);
    write_png((dir / "fused.png").string(), r.fused);
    if (r.hdr) write_pfm((dir / "hdr.pfm").string(), *r.hdr);
}

int run_experiment_cmd(const std::string& config, const std::string& report_path, bool strict, bool quiet) {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentReport report = run_experiment(config);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw Error("cannot write report '" + report_path + "'");
        out << report.to_json();
    }
    if (!quiet) std::cout << report.to_text();
    std::cerr << report.rows.size() << " scenes in " << secs << " s\n";
    return strict && !report.passed() ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-image saturation restoration, exposure fusion and HDR merge"};
    app.require_subcommand(1);
    int rc = 0;

    ExposureArgs synth_ex;
    SynthArgs synth_sa;
    std::string synth_in, synth_crf = "gamma:2.2", synth_dark, synth_bright, synth_gamma;
    auto* synth = app.add_subcommand("synth", "Synthesize dark and bright exposures from one image");
    synth->add_option("--input", synth_in, "Input PNG")->required()->check(CLI::ExistingFile);
    synth->add_option("--crf", synth_crf, "CRF: gamma:<g> or a CSV table")->capture_default_str();
    synth_ex.add(synth);
    synth_sa.add(synth);
    synth->add_option("--out-dark", synth_dark, "Dark output PNG");
    synth->add_option("--out-bright", synth_bright, "Bright output PNG");
    synth->add_option("--dump-gamma-map", synth_gamma, "PFM of fixed ratios (R dark, G bright)");
    synth->callback([&] { run_synth(synth_in, synth_crf, synth_ex, synth_sa, synth_dark, synth_bright, synth_gamma); });

    std::string masks_in, masks_m0, masks_m2;
    int masks_xi_u = 250, masks_xi_l = 200;
    auto* masks = app.add_subcommand("masks", "Write exposedness masks of an input image");
    masks->add_option("--input", masks_in, "Input PNG")->required()->check(CLI::ExistingFile);
    masks->add_option("--xi-u", masks_xi_u)->capture_default_str();
    masks->add_option("--xi-l", masks_xi_l)->capture_default_str();
    masks->add_option("--out-m0", masks_m0, "Darkening mask PNG");
    masks->add_option("--out-m2", masks_m2, "Brightening mask PNG");
    masks->callback([&] { run_masks(masks_in, masks_xi_u, masks_xi_l, masks_m0, masks_m2); });

    std::string met_test, met_metric = "mefssim";
    std::vector<std::string> met_refs;
    bool met_json = false;
    auto* metrics = app.add_subcommand("metrics", "Score an image against references");
    metrics->add_option("--test", met_test, "Image under test")->required()->check(CLI::ExistingFile);
    metrics->add_option("--refs", met_refs, "Reference images")->required()->check(CLI::ExistingFile);
    metrics->add_option("--metric", met_metric)
        ->check(CLI::IsMember({"mefssim", "ssim", "psnr", "mse", "colorangle"}))
        ->capture_default_str();
    metrics->add_flag("--json", met_json, "Print JSON");
    metrics->callback([&] { rc = run_metrics(met_test, met_refs, met_metric, met_json); });

    std::string loss_target, loss_base, loss_residual;
    FeatureStage loss_stage{2, 2};
    bool loss_mean = false;
    auto* loss = app.add_subcommand("loss", "Training objective of an enhanced image against its ground truth");
    loss->add_option("--target", loss_target, "Ground-truth PNG")->required()->check(CLI::ExistingFile);
    loss->add_option("--base", loss_base, "Synthetic image the residual is added to")->required()->check(CLI::ExistingFile);
    loss->add_option("--residual", loss_residual, "Residual PFM (zero if omitted)")->check(CLI::ExistingFile);
    loss->add_option("--feature-scale", loss_stage.scale)->check(CLI::Range(1, 2))->capture_default_str();
    loss->add_option("--feature-kernel", loss_stage.kernel)->check(CLI::Range(1, 4))->capture_default_str();
    loss->add_flag("--mean", loss_mean, "Average the restoration term instead of summing it");
    loss->callback([&] { rc = run_loss(loss_target, loss_base, loss_residual, loss_stage, loss_mean); });

    std::vector<std::string> fuse_in;
    std::string fuse_out;
    int fuse_extra = 1;
    auto* fuse = app.add_subcommand("fuse", "Multi-scale fusion of dark, input and bright images");
    fuse->add_option("--inputs", fuse_in, "z0 z1 z2")->required()->expected(3)->check(CLI::ExistingFile);
    fuse->add_option("--out", fuse_out, "Output PNG")->required();
    fuse->add_option("--levels-extra", fuse_extra, "Pyramid levels beyond floor(log2(min side))")
        ->capture_default_str();
    fuse->callback([&] { run_fuse(fuse_in, fuse_out, fuse_extra); });

    std::vector<std::string> merge_in;
    std::vector<double> merge_times;
    std::string merge_crf = "gamma:2.2", merge_out;
    auto* merge = app.add_subcommand("merge", "Merge an exposure stack into a radiance map");
    merge->add_option("--inputs", merge_in, "Input PNGs")->required()->check(CLI::ExistingFile);
    merge->add_option("--times", merge_times, "Exposure times")->required();
    merge->add_option("--crf", merge_crf)->capture_default_str();
    merge->add_option("--out", merge_out, "Output PFM")->required();
    merge->callback([&] { run_merge(merge_in, merge_times, merge_crf, merge_out); });

    DatasetArgs ds;
    ExposureArgs ds_ex;
    auto* dataset = app.add_subcommand("dataset", "Synthetic scene datasets");
    dataset->require_subcommand(1);
    auto* gen = dataset->add_subcommand("gen", "Render seeded scenes through the virtual camera");
    gen->add_option("--scenes", ds.scenes)->capture_default_str();
    gen->add_option("--seed", ds.seed)->capture_default_str();
    gen->add_option("--out", ds.out, "Output directory")->required();
    gen->add_option("--width", ds.width)->capture_default_str();
    gen->add_option("--height", ds.height)->capture_default_str();
    gen->add_option("--dynamic-range", ds.dynamic_range)->capture_default_str();
    gen->add_option("--crf", ds.crf)->capture_default_str();
    gen->add_option("--noise", ds.noise)->check(CLI::IsMember({"none", "gaussian-poisson"}))->capture_default_str();
    gen->add_option("--read-sigma", ds.read_sigma)->capture_default_str();
    gen->add_option("--gain", ds.gain)->capture_default_str();
    ds_ex.add(gen);
    gen->callback([&] { run_dataset_gen(ds, ds_ex); });

    RestoreArgs rs;
    ExposureArgs rs_ex;
    SynthArgs rs_sa;
    auto* restore = app.add_subcommand("restore", "Run the full restoration pipeline on one image");
    restore->add_option("--input", rs.input, "Input PNG")->required()->check(CLI::ExistingFile);
    restore->add_option("--crf", rs.crf)->capture_default_str();
    restore->add_option("--refiner", rs.refiner)->check(CLI::IsMember(refiner_names()))->capture_default_str();
    restore->add_option("--out-dir", rs.out_dir, "Output directory")->required();
    restore->add_option("--gt-dark", rs.gt_dark, "Ground-truth dark image for the gain-bias refiner");
    restore->add_option("--gt-bright", rs.gt_bright, "Ground-truth bright image for the gain-bias refiner");
    restore->add_option("--levels-extra", rs.extra_levels)->capture_default_str();
    restore->add_flag("--no-hdr", rs.no_hdr, "Skip the radiance merge");
    rs_ex.add(restore);
    rs_sa.add(restore);
    restore->callback([&] { run_restore(rs, rs_ex, rs_sa); });

    std::string exp_config, exp_report;
    bool exp_strict = false, exp_quiet = false;
    auto* experiment = app.add_subcommand("experiment", "Run a seeded scene suite and report metrics");
    experiment->add_option("--config", exp_config, "key = value config")->required()->check(CLI::ExistingFile);
    experiment->add_option("--report", exp_report, "JSON report path");
    experiment->add_flag("--strict", exp_strict, "Exit nonzero when a threshold check fails");
    experiment->add_flag("--quiet", exp_quiet, "Do not print the table");
    experiment->callback([&] { rc = run_experiment_cmd(exp_config, exp_report, exp_strict, exp_quiet); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
