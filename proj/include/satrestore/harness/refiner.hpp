#pragma once

#include <memory>
#include <string>
#include <vector>

#include "satrestore/core/image.hpp"

namespace satrestore {

/// Extra inputs a refiner may consult. Pointers may be null.
struct RefinerParams {
    /// Ground-truth exposure for self-test refiners.
    const LdrImage* ground_truth = nullptr;
};

/// Learned-correction slot: refine() returns a signed residual that is added
/// to the model-based initial image.
class Refiner {
public:
    virtual ~Refiner() = default;
    virtual std::string name() const = 0;
    /// `mask` is the exposedness mask for the synthesized direction (same
    /// shape as z1). The result has the shape of z_init and is finite.
    virtual FloatImage refine(const LdrImage& z1, const LdrImage& z_init, const Mask& mask,
                              const RefinerParams& params) const = 0;
};

/// All-zero residual.
class IdentityRefiner final : public Refiner {
public:
    std::string name() const override { return "identity"; }
    FloatImage refine(const LdrImage& z1, const LdrImage& z_init, const Mask& mask,
                      const RefinerParams& params) const override;
};

/// Per-channel least-squares affine fit a * z_init + b to the ground truth,
/// returned as the residual (a - 1) * z_init + b. Needs params.ground_truth.
class GainBiasRefiner final : public Refiner {
public:
    std::string name() const override { return "gain-bias"; }
    FloatImage refine(const LdrImage& z1, const LdrImage& z_init, const Mask& mask,
                      const RefinerParams& params) const override;
};

/// Throws Error for unknown names.
std::unique_ptr<Refiner> make_refiner(const std::string& name);
std::vector<std::string> refiner_names();

/// quantize(z_init + residual), clamped to [0, 255].
LdrImage apply_residual(const LdrImage& z_init, const FloatImage& residual);

}  // namespace satrestore
