#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "satrestore/synthgen/imf.hpp"
#include "satrestore/synthgen/synthesis.hpp"
#include "test_util.hpp"

using namespace satrestore;

namespace {

LdrImage constant(int v, int w = 4, int h = 3) { return LdrImage(w, h, 3, static_cast<std::uint8_t>(v)); }

LdrImage single(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    LdrImage img(1, 1, 3);
    img.at(0, 0, 0) = r;
    img.at(0, 0, 1) = g;
    img.at(0, 0, 2) = b;
    return img;
}

}  // namespace

TEST_CASE("gamma IMF is linear") {
    const ImfLut imf = build_imf(Crf::gamma(2.2), 1.0, 0.25);
    CHECK(imf.direction == ImfLut::Direction::Darken);
    CHECK(imf(128, 0) == doctest::Approx(68.2).epsilon(1e-3));
    for (int z = 0; z < 256; ++z) CHECK(imf(z, 1) == doctest::Approx(z * std::pow(0.25, 1 / 2.2)).epsilon(1e-12));
}

TEST_CASE("identity ratio and zero level") {
    std::mt19937_64 rng(5);
    const Crf f = Crf::tabulated(testutil::random_crf_table(rng));
    const ImfLut id = build_imf(f, 2.0, 2.0);
    CHECK(id.direction == ImfLut::Direction::Identity);
    for (int z = 0; z < 256; ++z) CHECK(id(z, 2) == z);
    for (double k : {0.25, 4.0}) CHECK(build_imf(f, 1.0, k)(0, 0) == 0.0);
    CHECK_THROWS_AS(build_imf(f, 0.0, 1.0), Error);
}

TEST_CASE("IMF tables are monotone for monotone CRFs") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 10; ++t) {
        const Crf f = Crf::tabulated(testutil::random_crf_table(rng));
        for (double k : {0.25, 4.0}) {
            const ImfLut imf = build_imf(f, 1.0, k);
            for (int c = 0; c < 3; ++c)
                for (int z = 1; z < 256; ++z) {
                    CHECK(imf(z, c) >= imf(z - 1, c));
                    CHECK(imf(z, c) <= 255.0);
                }
        }
    }
}

TEST_CASE("reliability weight values") {
    CHECK(reliability_weight(255, 250, 200, WeightMode::Verbatim) == 0.0);
    CHECK(reliability_weight(100, 250, 200, WeightMode::Verbatim) == 128.0);
    CHECK(reliability_weight(225, 250, 200, WeightMode::Verbatim) == doctest::Approx(127.5));
    CHECK(reliability_weight(225, 250, 200, WeightMode::Smooth) == doctest::Approx(64.0));
    CHECK(reliability_weight(250, 250, 200, WeightMode::Smooth) == 0.0);
    CHECK(reliability_weight(200, 250, 200, WeightMode::Smooth) == 128.0);
    for (int z = 0; z < 256; ++z) {
        CHECK(reliability_weight(z, 250, 200, WeightMode::Verbatim) == oracle::dark_weight(z, 250, 200, false));
        CHECK(reliability_weight(z, 250, 200, WeightMode::Smooth) ==
              doctest::Approx(oracle::dark_weight(z, 250, 200, true)).epsilon(1e-14));
    }
}

TEST_CASE("bright weight mirrors the dark weight") {
    for (int z = 0; z < 256; ++z) {
        for (auto mode : {WeightMode::Verbatim, WeightMode::Smooth}) {
            CHECK(brightening_weight(z, 5, 55, mode) ==
                  doctest::Approx(reliability_weight(60 - z, 55, 5, mode)).epsilon(1e-14));
        }
    }
    CHECK(brightening_weight(4, 5, 55, WeightMode::Verbatim) == 0.0);
    CHECK(brightening_weight(55, 5, 55, WeightMode::Smooth) == 128.0);
}

TEST_CASE("fixed ratio examples") {
    const ImfLut dark = build_imf(Crf::gamma(2.2), 1.0, 0.25);
    const double k = std::pow(0.25, 1 / 2.2);
    CHECK(fixed_ratio({255, 240, 100}, dark, 250, 200, WeightMode::Verbatim) == doctest::Approx(k).epsilon(1e-12));
    CHECK(k == doctest::Approx(0.5325).epsilon(1e-4));
    CHECK(fixed_ratio({255, 255, 255}, dark, 250, 200, WeightMode::Verbatim) ==
          doctest::Approx(dark(250, 0) / 250.0).epsilon(1e-12));
    const ImfLut half = build_imf(Crf::gamma(1.0), 1.0, 0.5);
    CHECK(fixed_ratio({100, 100, 100}, half, 250, 200, WeightMode::Verbatim) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fixed_ratio({0, 0, 0}, dark, 250, 200, WeightMode::Verbatim) ==
          doctest::Approx(dark(1, 0)).epsilon(1e-12));
}

TEST_CASE("fixed ratio matches the brute-force minimizer") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> level(1, 255);
    for (int t = 0; t < 200; ++t) {
        const Crf f = t % 2 ? Crf::tabulated(testutil::random_crf_table(rng)) : Crf::gamma(1.0 + 0.02 * (t % 70));
        const ImfLut imf = build_imf(f, 1.0, 0.25);
        const bool smooth = t % 3 == 0;
        Rgb8 px{static_cast<std::uint8_t>(level(rng)), static_cast<std::uint8_t>(level(rng)),
                static_cast<std::uint8_t>(level(rng))};
        std::array<double, 3> z{}, tgt{}, w{};
        double wsum = 0.0;
        for (int c = 0; c < 3; ++c) {
            z[c] = px[c];
            tgt[c] = imf(px[c], c);
            w[c] = oracle::dark_weight(px[c], 250, 200, smooth);
            wsum += w[c];
        }
        if (wsum == 0.0) continue;
        const double expect = oracle::minimize_ratio(z, tgt, w);
        CHECK(fixed_ratio(px, imf, 250, 200, smooth ? WeightMode::Smooth : WeightMode::Verbatim) ==
              doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("synthesize_dark examples") {
    const Crf g = Crf::gamma(2.2);
    const ExposureConfig cfg;
    const LdrImage d = synthesize_dark(constant(128), g, cfg);
    for (auto v : d.data()) CHECK(v == 68);
    const LdrImage p = synthesize_dark(single(255, 240, 100), g, cfg);
    CHECK(p.at(0, 0, 0) == 136);
    CHECK(p.at(0, 0, 1) == 128);
    CHECK(p.at(0, 0, 2) == 53);

    ExposureConfig same = cfg;
    same.dt0 = same.dt1;
    std::mt19937_64 rng(9);
    const LdrImage z1 = testutil::random_ldr(13, 7, rng);
    CHECK(synthesize_dark(z1, g, same) == z1);
}

TEST_CASE("synthesize_bright examples") {
    ExposureConfig cfg;
    const LdrImage b = synthesize_bright(constant(64), Crf::gamma(1.0), cfg);
    for (auto v : b.data()) CHECK(v == 255);
    const auto zero = synthesize_bright_detailed(single(0, 0, 0), Crf::gamma(2.2), cfg);
    CHECK(zero.fixed_ratio_used.at(0, 0, 0) == 1);
    for (auto v : zero.image.data()) CHECK(v == 0);

    ExposureConfig same = cfg;
    same.dt2 = same.dt1;
    std::mt19937_64 rng(10);
    const LdrImage z1 = testutil::random_ldr(9, 9, rng);
    CHECK(synthesize_bright(z1, Crf::gamma(2.2), same) == z1);
}

TEST_CASE("dark output is never brighter than the input") {
    std::mt19937_64 rng(12);
    const LdrImage z1 = testutil::random_ldr(32, 32, rng);
    for (int t = 0; t < 5; ++t) {
        const Crf f = Crf::tabulated(testutil::random_crf_table(rng));
        const LdrImage z0 = synthesize_dark(z1, f, ExposureConfig{}, WeightMode::Smooth);
        for (std::size_t i = 0; i < z1.size(); ++i) CHECK(z0.data()[i] <= z1.data()[i]);
    }
}

TEST_CASE("case coherence at the boundary pixel") {
    for (auto mode : {WeightMode::Verbatim, WeightMode::Smooth}) {
        for (double gamma : {1.0, 1.8, 2.2, 2.4}) {
            const ImfLut imf = build_imf(Crf::gamma(gamma), 1.0, 0.25);
            const double r = fixed_ratio({250, 250, 250}, imf, 250, 200, mode);
            for (int c = 0; c < 3; ++c) CHECK(std::abs(quantize(r * 250) - quantize(imf(250, c))) <= 1);
        }
    }
}

TEST_CASE("gamma map reports ratios only at fixed-ratio pixels") {
    LdrImage z1(2, 1, 3, 100);
    z1.at(1, 0, 0) = 255;
    const auto r = synthesize_dark_detailed(z1, Crf::gamma(2.2), ExposureConfig{});
    CHECK(r.fixed_ratio_used.at(0, 0, 0) == 0);
    CHECK(r.ratio.at(0, 0, 0) == 0.0);
    CHECK(r.fixed_ratio_used.at(1, 0, 0) == 1);
    CHECK(r.ratio.at(1, 0, 0) == doctest::Approx(std::pow(0.25, 1 / 2.2)).epsilon(1e-12));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(synthesize_dark(LdrImage(2, 2, 1), Crf::gamma(2.2), ExposureConfig{}), ShapeError);
    ExposureConfig bad;
    bad.xi_l = 251;
    CHECK_THROWS_AS(synthesize_dark(constant(1), Crf::gamma(2.2), bad), Error);
    CHECK_THROWS_AS(parse_weight_mode("cubic"), Error);
}
