#pragma once

#include <optional>
#include <string>

#include "satrestore/core/crf.hpp"
#include "satrestore/core/error.hpp"
#include "satrestore/core/exposure.hpp"
#include "satrestore/core/image.hpp"
#include "satrestore/exposedness/masks.hpp"
#include "satrestore/fuse/mef_fusion.hpp"
#include "satrestore/harness/refiner.hpp"
#include "satrestore/synthgen/synthesis.hpp"

namespace satrestore {

/// Failure inside one pipeline stage; what() is prefixed with the stage name.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct PipelineOptions {
    SynthesisOptions synthesis{};
    FusionOptions fusion{};
    bool merge_hdr = true;
};

struct PipelineResult {
    LdrImage z0_initial;
    LdrImage z2_initial;
    ExposednessMasks masks;
    LdrImage z0_gated;
    LdrImage z2_gated;
    LdrImage z0;  ///< after the refiner
    LdrImage z2;
    LdrImage fused;
    std::optional<RadianceImage> hdr;
};

/// synthesis -> masks and gating -> refiner -> fusion (and HDR merge).
PipelineResult restore_pipeline(const LdrImage& z1, const Crf& crf, const ExposureConfig& cfg,
                                const Refiner& refiner, const PipelineOptions& opts = {},
                                const RefinerParams& dark_params = {}, const RefinerParams& bright_params = {});

}  // namespace satrestore
