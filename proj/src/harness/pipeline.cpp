#include "satrestore/harness/pipeline.hpp"

#include <array>
#include <utility>

#include "satrestore/fuse/hdr_merge.hpp"

namespace satrestore {

namespace {

template <class F>
auto stage(const char* name, F&& f) {
    try {
        return std::forward<F>(f)();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

}  // namespace

PipelineResult restore_pipeline(const LdrImage& z1, const Crf& crf, const ExposureConfig& cfg,
                                const Refiner& refiner, const PipelineOptions& opts,
                                const RefinerParams& dark_params, const RefinerParams& bright_params) {
    PipelineResult r;
    stage("synthesis", [&] {
        r.z0_initial = synthesize_dark_detailed(z1, crf, cfg, opts.synthesis).image;
        r.z2_initial = synthesize_bright_detailed(z1, crf, cfg, opts.synthesis).image;
        return 0;
    });
    stage("gating", [&] {
        r.masks = compute_masks(z1, cfg.xi_u, cfg.xi_l);
        r.z0_gated = gate(r.z0_initial, r.masks.m0);
        r.z2_gated = gate(r.z2_initial, r.masks.m2);
        return 0;
    });
    stage("refiner", [&] {
        r.z0 = apply_residual(r.z0_initial, refiner.refine(z1, r.z0_initial, r.masks.m0, dark_params));
        r.z2 = apply_residual(r.z2_initial, refiner.refine(z1, r.z2_initial, r.masks.m2, bright_params));
        return 0;
    });
    stage("fusion", [&] {
        r.fused = mef_fuse(r.z0, z1, r.z2, opts.fusion);
        return 0;
    });
    if (opts.merge_hdr) {
        stage("merge", [&] {
            const std::array<LdrImage, 3> stack{r.z0, z1, r.z2};
            const std::array<double, 3> times{cfg.dt0, cfg.dt1, cfg.dt2};
            r.hdr = hdr_merge(stack, times, crf);
            return 0;
        });
    }
    return r;
}

}  // namespace satrestore
