#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "satrestore/objective/feature_extractor.hpp"
#include "satrestore/objective/losses.hpp"
#include "satrestore/objective/mef_ssim.hpp"
#include "satrestore/objective/metrics.hpp"
#include "test_util.hpp"

using namespace satrestore;

namespace {

FloatImage rgb(double r, double g, double b) {
    FloatImage img(1, 1, 3);
    img.at(0, 0, 0) = r;
    img.at(0, 0, 1) = g;
    img.at(0, 0, 2) = b;
    return img;
}

double angle_by_hand(double a0, double a1, double a2, double b0, double b1, double b2) {
    const double cx = a1 * b2 - a2 * b1, cy = a2 * b0 - a0 * b2, cz = a0 * b1 - a1 * b0;
    return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), a0 * b0 + a1 * b1 + a2 * b2);
}

}  // namespace

TEST_CASE("restoration weight") {
    CHECK(restoration_weight(3, 6.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(restoration_weight(6, 6.0) == 1.0);
    CHECK(restoration_weight(200, 6.0) == 1.0);
    CHECK(restoration_weight(0, 6.0) == doctest::Approx(1.0 / 6.0));
    for (int z = 0; z < 256; ++z) {
        CHECK(restoration_weight(z, 6.0) <= 1.0);
        if (z >= 6) CHECK(restoration_weight(z, 6.0) == 1.0);
        if (z < 5) CHECK(restoration_weight(z, 6.0) < 1.0);
    }
}

TEST_CASE("restoration loss") {
    LdrImage t(1, 1, 3, 10), b(1, 1, 3, 8);
    const FloatImage zero(1, 1, 3, 0.0);
    CHECK(restoration_loss(t, b, zero, 6.0) == 12.0);
    CHECK(restoration_loss(t, b, zero, 6.0, Reduction::Mean) == 4.0);
    CHECK(restoration_loss(t, t, zero, 6.0) == 0.0);
    LdrImage low(1, 1, 1, 3), tgt(1, 1, 1, 5);
    CHECK(restoration_loss(tgt, low, FloatImage(1, 1, 1, 0.0), 6.0) == doctest::Approx(4.0 / 3.0));
    CHECK(restoration_loss(tgt, low, FloatImage(1, 1, 1, 2.0), 6.0) == 0.0);
}

TEST_CASE("color angle") {
    CHECK(color_angle_loss(rgb(1, 0, 0), rgb(0, 1, 0)) == doctest::Approx(std::numbers::pi / 2));
    CHECK(color_angle_loss(rgb(2, 2, 2), rgb(5, 5, 5)) == 0.0);
    CHECK(color_angle_loss(rgb(0, 0, 0), rgb(5, 1, 5)) == 0.0);
    CHECK(color_angle_loss(rgb(1, 2, 3), rgb(-1, -1, -1)) == 0.0);
    std::mt19937_64 rng(1);
    const FloatImage a = testutil::random_float(7, 5, 3, rng, 0.0, 255.0);
    const FloatImage b = testutil::random_float(7, 5, 3, rng, 0.0, 255.0);
    CHECK(color_angle_loss(a, a) == 0.0);
    const double base = color_angle_loss(a, b);
    std::uniform_real_distribution<double> s(0.01, 100.0);
    FloatImage as = a, bs = b;
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 7; ++x) {
            const double ka = s(rng), kb = s(rng);
            for (int c = 0; c < 3; ++c) {
                as.at(x, y, c) *= ka;
                bs.at(x, y, c) *= kb;
            }
        }
    CHECK(std::abs(color_angle_loss(as, bs) - base) <= 1e-9);
}

TEST_CASE("feature loss") {
    const KernelBankExtractor fx;
    CHECK(fx.kernels() == 4);
    CHECK(fx.scales() == 2);
    std::mt19937_64 rng(2);
    const FloatImage a = testutil::random_float(9, 6, 3, rng, 0.0, 255.0);
    const FloatImage b = testutil::random_float(9, 6, 3, rng, 0.0, 255.0);
    for (int s = 1; s <= 2; ++s)
        for (int k = 1; k <= 4; ++k) CHECK(feature_loss(a, a, fx, {s, k}) == 0.0);
    CHECK(feature_loss(a, b, fx, {1, 1}) == doctest::Approx(mse(quantize(a), quantize(b))).epsilon(1e-2));
    FloatImage a01 = a, b01 = b;
    for (auto& v : a01.data()) v /= 255.0;
    for (auto& v : b01.data()) v /= 255.0;
    CHECK(feature_loss(a, b, fx, {1, 1}) == doctest::Approx(mse(a01, b01)).epsilon(1e-12));

    FloatImage impulse(9, 9, 1, 0.0);
    impulse.at(4, 4, 0) = 255.0;
    const double taps = (1 + 16 + 36 + 16 + 1) / 256.0;
    CHECK(feature_loss(impulse, FloatImage(9, 9, 1, 0.0), fx, {1, 2}) ==
          doctest::Approx(taps * taps / 81.0).epsilon(1e-12));
    CHECK(feature_loss(impulse, FloatImage(9, 9, 1, 0.0), fx, {1, 3}) ==
          doctest::Approx(2 * 0.25 / 81.0).epsilon(1e-12));
    CHECK(fx.extract(impulse, {2, 1}).width() == 5);
    CHECK_THROWS_AS(fx.extract(impulse, {3, 1}), Error);
}

TEST_CASE("total loss") {
    const LossWeights w;
    CHECK(total_loss({1.0, 1.0, 1.0}, w) == doctest::Approx(1.02).epsilon(1e-15));
    CHECK(total_loss({2.5, 7.0, 9.0}, {0.0, 0.0, 6.0}) == 2.5);

    const KernelBankExtractor fx;
    LdrImage t(1, 1, 3), b(1, 1, 3);
    t.at(0, 0, 0) = 10;
    t.at(0, 0, 1) = 20;
    t.at(0, 0, 2) = 30;
    b = t;
    b.at(0, 0, 0) = 8;
    const FloatImage zero(1, 1, 3, 0.0);
    const double lr = 4.0;
    const double lc = angle_by_hand(10, 20, 30, 8, 20, 30);
    const double lf = (2.0 / 255.0) * (2.0 / 255.0) / 3.0;
    const auto parts = loss_components(t, b, zero, fx, {1, 1}, w);
    CHECK(std::abs(parts.restoration - lr) <= 1e-12);
    CHECK(std::abs(parts.color - lc) <= 1e-12);
    CHECK(std::abs(parts.feature - lf) <= 1e-12);
    CHECK(std::abs(total_loss(t, b, zero, fx, {1, 1}, w) - (lr + 0.01 * lc + 0.01 * lf)) <= 1e-12);
    CHECK(total_loss(t, t, zero, fx, {2, 3}, w) == 0.0);
}

TEST_CASE("mse and psnr") {
    LdrImage a(4, 4, 3, 100);
    CHECK(mse(a, a) == 0.0);
    CHECK(psnr(a, a) == kPsnrCap);
    CHECK(ssim(a, a) == doctest::Approx(1.0));
    CHECK(mse(FloatImage(3, 3, 3, 0.5), FloatImage(3, 3, 3, 0.6)) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(psnr_from_mse(0.01) == doctest::Approx(20.0).epsilon(1e-12));
    LdrImage b(4, 4, 3, 151);
    CHECK(mse(a, b) == doctest::Approx(0.04).epsilon(1e-12));
}

TEST_CASE("checkerboard against its inverse") {
    LdrImage a(16, 16, 3), b(16, 16, 3);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x)
            for (int c = 0; c < 3; ++c) {
                a.at(x, y, c) = (x + y) % 2 ? 255 : 0;
                b.at(x, y, c) = (x + y) % 2 ? 0 : 255;
            }
    const double expect = (-0.5 + 0.03 * 0.03) / (0.5 + 0.03 * 0.03);
    CHECK(ssim(a, b) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(ssim(a, b) < 0.0);
}

TEST_CASE("ssim is symmetric and bounded") {
    std::mt19937_64 rng(3);
    const LdrImage a = testutil::random_ldr(20, 15, rng);
    const LdrImage b = testutil::random_ldr(20, 15, rng);
    CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
    CHECK(ssim(a, b) <= 1.0);
    CHECK(ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(ssim(a, LdrImage(20, 14, 3)), ShapeError);
}

TEST_CASE("mef-ssim self score on degenerate stacks") {
    std::mt19937_64 rng(4);
    const LdrImage x = testutil::random_ldr(24, 20, rng);
    CHECK(std::abs(mef_ssim(x, std::vector<LdrImage>{x}) - 1.0) <= 1e-6);
    CHECK(std::abs(mef_ssim(x, std::vector<LdrImage>{x, x, x}) - 1.0) <= 1e-6);
    const LdrImage flat(16, 16, 3, 90);
    CHECK(std::abs(mef_ssim(flat, std::vector<LdrImage>{flat}) - 1.0) <= 1e-6);
}

TEST_CASE("mef-ssim matches the per-patch oracle") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 6; ++t) {
        std::vector<LdrImage> refs{testutil::random_ldr(16, 16, rng, 0, 120), testutil::random_ldr(16, 16, rng, 60, 200),
                                   testutil::random_ldr(16, 16, rng, 150, 255)};
        if (t % 2) refs[1] = refs[0];
        const LdrImage fused = testutil::random_ldr(16, 16, rng, 40, 220);
        CHECK(std::abs(mef_ssim(fused, refs) - oracle::mef_ssim(fused, refs)) <= 1e-9);
        CHECK(std::abs(mef_ssim(refs[1], refs) - oracle::mef_ssim(refs[1], refs)) <= 1e-9);
    }
}

TEST_CASE("mef-ssim errors") {
    CHECK_THROWS_AS(mef_ssim(LdrImage(16, 16), std::vector<LdrImage>{LdrImage(16, 15)}), ShapeError);
    CHECK_THROWS_AS(mef_ssim(LdrImage(16, 16), std::vector<LdrImage>{}), Error);
    CHECK_THROWS_AS(mef_ssim(LdrImage(6, 6), std::vector<LdrImage>{LdrImage(6, 6)}), ShapeError);
}
