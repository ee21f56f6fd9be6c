#pragma once

#include "satrestore/core/image.hpp"
#include "satrestore/objective/feature_extractor.hpp"

namespace satrestore {

struct LossWeights {
    double color = 0.01;    ///< weight of the color-angle term
    double feature = 0.01;  ///< weight of the feature term
    double nu = 6.0;        ///< level below which restoration errors are de-weighted
};

enum class Reduction { Sum, Mean };

/// 1 when base >= nu, else 1 / (nu - base).
double restoration_weight(double base_level, double nu) noexcept;

/// sum W(base) * (target - residual - base)^2 over all samples (or the mean).
double restoration_loss(const LdrImage& target, const LdrImage& base, const FloatImage& residual, double nu,
                        Reduction reduction = Reduction::Sum);

/// Angle in radians between two RGB vectors; 0 if either is the zero vector.
double color_angle(const double* a, const double* b) noexcept;

/// sum over pixels of angle(target, max(pred, 0)).
double color_angle_loss(const FloatImage& target, const FloatImage& pred);
double color_angle_loss(const LdrImage& target, const FloatImage& pred);

/// Mean over the stage's feature map of (phi(a) - phi(b))^2.
double feature_loss(const FloatImage& a, const FloatImage& b, const FeatureExtractor& fx, FeatureStage stage);

struct LossComponents {
    double restoration = 0.0;
    double color = 0.0;
    double feature = 0.0;
};

double total_loss(const LossComponents& parts, const LossWeights& weights) noexcept;

/// Evaluates all three terms for the enhanced image base + residual against `target`.
LossComponents loss_components(const LdrImage& target, const LdrImage& base, const FloatImage& residual,
                               const FeatureExtractor& fx, FeatureStage stage, const LossWeights& weights,
                               Reduction reduction = Reduction::Sum);

double total_loss(const LdrImage& target, const LdrImage& base, const FloatImage& residual,
                  const FeatureExtractor& fx, FeatureStage stage, const LossWeights& weights = {},
                  Reduction reduction = Reduction::Sum);

}  // namespace satrestore
