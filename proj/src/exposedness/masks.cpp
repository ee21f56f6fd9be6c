#include "satrestore/exposedness/masks.hpp"

#include "satrestore/core/error.hpp"

namespace satrestore {

namespace {

template <class T>
Image<T> gate_impl(const Image<T>& synthetic, const Mask& mask) {
    require_same_shape(synthetic, mask, "gate");
    Image<T> out = synthetic;
    auto dst = out.data();
    const auto m = mask.data();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        if (!m[i]) dst[i] = T{};
    }
    return out;
}

}  // namespace

ExposednessMasks compute_masks(const LdrImage& z1, int xi_u, int xi_l) {
    if (!(xi_l < xi_u)) throw Error("compute_masks: require xi_l < xi_u");
    ExposednessMasks masks{Mask(z1.width(), z1.height(), z1.channels()), Mask(z1.width(), z1.height(), z1.channels())};
    const auto src = z1.data();
    auto m0 = masks.m0.data();
    auto m2 = masks.m2.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
        m0[i] = src[i] >= xi_u ? 0 : 1;
        m2[i] = src[i] <= xi_l ? 0 : 1;
    }
    return masks;
}

LdrImage gate(const LdrImage& synthetic, const Mask& mask) { return gate_impl(synthetic, mask); }

FloatImage gate(const FloatImage& synthetic, const Mask& mask) { return gate_impl(synthetic, mask); }

}  // namespace satrestore
