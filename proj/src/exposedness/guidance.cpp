#include "satrestore/exposedness/guidance.hpp"

#include <string>

#include "satrestore/core/error.hpp"

namespace satrestore {

Conv3x3 Conv3x3::zeros(int in_channels, int out_channels) {
    if (in_channels < 1 || out_channels < 1) throw ShapeError("Conv3x3: channel counts must be >= 1");
    Conv3x3 conv;
    conv.in_channels = in_channels;
    conv.out_channels = out_channels;
    conv.weight.assign(static_cast<std::size_t>(in_channels) * out_channels * 9, 0.0);
    conv.bias.assign(static_cast<std::size_t>(out_channels), 0.0);
    return conv;
}

FeatureMap conv3x3(const FeatureMap& x, const Conv3x3& conv) {
    if (x.channels() != conv.in_channels) {
        throw ShapeError("conv3x3: input has " + std::to_string(x.channels()) + " channels, kernel expects " +
                         std::to_string(conv.in_channels));
    }
    if (conv.weight.size() != static_cast<std::size_t>(conv.in_channels) * conv.out_channels * 9 ||
        conv.bias.size() != static_cast<std::size_t>(conv.out_channels)) {
        throw ShapeError("conv3x3: weight/bias sizes inconsistent with channel counts");
    }
    const int h = x.height();
    const int w = x.width();
    FeatureMap out(conv.out_channels, h, w);
    for (int o = 0; o < conv.out_channels; ++o) {
        for (int yy = 0; yy < h; ++yy) {
            for (int xx = 0; xx < w; ++xx) {
                double acc = conv.bias[o];
                for (int i = 0; i < conv.in_channels; ++i) {
                    for (int ky = 0; ky < 3; ++ky) {
                        const int sy = yy + ky - 1;
                        if (sy < 0 || sy >= h) continue;
                        for (int kx = 0; kx < 3; ++kx) {
                            const int sx = xx + kx - 1;
                            if (sx < 0 || sx >= w) continue;
                            acc += conv.w(o, i, ky, kx) * x.at(i, sy, sx);
                        }
                    }
                }
                out.at(o, yy, xx) = acc;
            }
        }
    }
    return out;
}

GuidanceParams GuidanceParams::from_tensors(const TensorFile& file) {
    GuidanceParams p;
    const Tensor& w1 = file.at("conv1");
    const Tensor& w2 = file.at("conv2");
    if (w1.shape.size() != 4 || w1.shape[2] != 3 || w1.shape[3] != 3) throw ShapeError("conv1 must be [out,in,3,3]");
    if (w2.shape.size() != 4 || w2.shape[2] != 3 || w2.shape[3] != 3) throw ShapeError("conv2 must be [out,in,3,3]");
    if (w2.shape[1] != w1.shape[0]) throw ShapeError("conv2 input width must equal conv1 output width");

    p.conv1.out_channels = w1.shape[0];
    p.conv1.in_channels = w1.shape[1];
    p.conv1.weight = w1.values;
    p.conv1.bias = file.expect("conv1.bias", {w1.shape[0]}).values;

    p.conv2.out_channels = w2.shape[0];
    p.conv2.in_channels = w2.shape[1];
    p.conv2.weight = w2.values;
    p.conv2.bias = file.expect("conv2.bias", {w2.shape[0]}).values;

    const auto& a = file.expect("alpha", {kGuidanceLevels}).values;
    const auto& b = file.expect("beta", {kGuidanceLevels}).values;
    std::copy(a.begin(), a.end(), p.alpha.begin());
    std::copy(b.begin(), b.end(), p.beta.begin());
    if (file.contains("negative_slope")) p.negative_slope = file.expect("negative_slope", {1}).values[0];
    return p;
}

TensorFile GuidanceParams::to_tensors() const {
    TensorFile f;
    f.set("conv1", {{conv1.out_channels, conv1.in_channels, 3, 3}, conv1.weight});
    f.set("conv1.bias", {{conv1.out_channels}, conv1.bias});
    f.set("conv2", {{conv2.out_channels, conv2.in_channels, 3, 3}, conv2.weight});
    f.set("conv2.bias", {{conv2.out_channels}, conv2.bias});
    f.set("alpha", {{kGuidanceLevels}, std::vector<double>(alpha.begin(), alpha.end())});
    f.set("beta", {{kGuidanceLevels}, std::vector<double>(beta.begin(), beta.end())});
    f.set("negative_slope", {{1}, {negative_slope}});
    return f;
}

FeatureMap guidance_features(const FeatureMap& gated, const GuidanceParams& params) {
    FeatureMap hidden = conv3x3(gated, params.conv1);
    for (double& v : hidden.data()) {
        if (v < 0.0) v *= params.negative_slope;
    }
    return conv3x3(hidden, params.conv2);
}

FeatureMap inject_guidance(const FeatureMap& host, const FeatureMap& guidance, const GuidanceParams& params,
                           int level) {
    if (level < 0 || level >= kGuidanceLevels) {
        throw Error("inject_guidance: level must be in [0, " + std::to_string(kGuidanceLevels) + ")");
    }
    require_same_shape(host, guidance, "inject_guidance");
    const double a = params.alpha[level];
    const double b = params.beta[level];
    FeatureMap out = host;
    auto dst = out.data();
    const auto g = guidance.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a * dst[i] + b * g[i];
    return out;
}

FeatureMap guidance_forward(const FeatureMap& gated, const FeatureMap& host, const GuidanceParams& params,
                            int level) {
    return inject_guidance(host, guidance_features(gated, params), params, level);
}

}  // namespace satrestore
