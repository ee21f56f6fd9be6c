#include "satrestore/harness/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "satrestore/core/error.hpp"

namespace satrestore {

namespace {

constexpr double kTaper = 0.011108996538242306;  // exp(-4.5)

// Profile of a component at pixel (x, y), excluding the ramp (handled by
// the caller because its shape depends on `low`).
double profile(const SceneComponent& comp, double x, double y, double w, double h) {
    const double s = comp.scale * std::min(w, h);
    const double dx = x - comp.cx * w;
    const double dy = y - comp.cy * h;
    const double r2 = dx * dx + dy * dy;
    switch (comp.kind) {
        case SceneComponent::Kind::Blob: {
            const double g = std::exp(-r2 / (2.0 * s * s));
            return g > kTaper ? (g - kTaper) / (1.0 - kTaper) : 0.0;
        }
        case SceneComponent::Kind::Highlight: {
            const double q = r2 / (s * s);
            return std::exp(-(q * q * q * q));
        }
        case SceneComponent::Kind::Ramp:
            break;
    }
    return 0.0;
}

// Ramp position t in [0, 1].
double ramp_t(const SceneComponent& comp, double x, double y, double w, double h) {
    const double s = comp.scale * std::min(w, h);
    const double proj = (x - comp.cx * w) * std::cos(comp.angle) + (y - comp.cy * h) * std::sin(comp.angle);
    return std::clamp(0.5 + proj / s, 0.0, 1.0);
}

void accumulate(const SceneComponent& comp, RadianceImage& out) {
    const double w = out.width();
    const double h = out.height();
    for (int y = 0; y < out.height(); ++y) {
        for (int x = 0; x < out.width(); ++x) {
            const double px = x + 0.5;
            const double py = y + 0.5;
            double* dst = out.pixel(x, y);
            if (comp.kind == SceneComponent::Kind::Ramp) {
                const double f = std::pow(comp.low, 1.0 - ramp_t(comp, px, py, w, h));
                for (int c = 0; c < 3; ++c) dst[c] += comp.peak[c] * f;
            } else {
                const double f = profile(comp, px, py, w, h);
                if (f == 0.0) continue;
                for (int c = 0; c < 3; ++c) dst[c] += comp.peak[c] * f;
            }
        }
    }
}

}  // namespace

RadianceImage generate_scene(const SceneSpec& spec) {
    RadianceImage out(spec.width, spec.height, 3, 0.0);
    for (const auto& comp : spec.components) {
        if (!(comp.scale > 0.0)) throw Error("scene component scale must be positive");
        if (comp.kind == SceneComponent::Kind::Ramp && !(comp.low > 0.0 && comp.low <= 1.0)) {
            throw Error("ramp floor must lie in (0, 1]");
        }
        for (double p : comp.peak) {
            if (!std::isfinite(p) || p < 0.0) throw Error("scene component peaks must be finite and >= 0");
        }
        accumulate(comp, out);
    }
    return out;
}

double dynamic_range_of(const RadianceImage& img) {
    const auto [lo, hi] = std::ranges::minmax_element(img.data());
    if (*lo <= 0.0) return std::numeric_limits<double>::infinity();
    return *hi / *lo;
}

SceneSpec random_scene(std::uint64_t seed, int width, int height, double dynamic_range) {
    if (!(dynamic_range > 1.0)) throw Error("random_scene: dynamic range must exceed 1");
    SceneSpec spec;
    spec.width = width;
    spec.height = height;
    spec.seed = seed;
    spec.dynamic_range = dynamic_range;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double a, double b) { return a + (b - a) * unit(rng); };
    auto log_uniform = [&](double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); };
    auto tint = [&](double level, double spread) {
        return std::array<double, 3>{level * uniform(1.0 - spread, 1.0 + spread),
                                     level * uniform(1.0 - spread, 1.0 + spread),
                                     level * uniform(1.0 - spread, 1.0 + spread)};
    };

    SceneComponent ramp;
    ramp.kind = SceneComponent::Kind::Ramp;
    ramp.cx = uniform(0.4, 0.6);
    ramp.cy = uniform(0.4, 0.6);
    ramp.scale = 1.5;
    ramp.angle = uniform(0.0, 2.0 * 3.14159265358979323846);
    ramp.peak = tint(uniform(0.25, 0.45), 0.15);
    spec.components.push_back(ramp);

    const int blobs = 36;
    for (int i = 0; i < blobs; ++i) {
        SceneComponent b;
        b.kind = SceneComponent::Kind::Blob;
        b.cx = uniform(0.0, 1.0);
        b.cy = uniform(0.0, 1.0);
        b.scale = log_uniform(0.015, 0.12);
        b.peak = tint(log_uniform(2e-3, 0.8), 0.45);
        spec.components.push_back(b);
    }
    const int spots = 3;
    for (int i = 0; i < spots; ++i) {
        SceneComponent s;
        s.kind = SceneComponent::Kind::Highlight;
        s.cx = uniform(0.15, 0.85);
        s.cy = uniform(0.15, 0.85);
        s.scale = uniform(0.04, 0.09);
        s.peak = tint(uniform(1.5, 3.5), 0.2);
        spec.components.push_back(s);
    }

    // Tune the ramp floor: everything except the ramp is fixed, so cache it.
    SceneSpec rest = spec;
    rest.components.erase(rest.components.begin());
    const RadianceImage others = generate_scene(rest);
    const double w = width;
    const double h = height;
    std::vector<double> t(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) t[static_cast<std::size_t>(y) * width + x] = ramp_t(ramp, x + 0.5, y + 0.5, w, h);

    auto measure = [&](double low) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                const double f = std::pow(low, 1.0 - t[static_cast<std::size_t>(y) * width + x]);
                const double* o = others.pixel(x, y);
                for (int c = 0; c < 3; ++c) {
                    const double v = o[c] + ramp.peak[c] * f;
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
        return hi / lo;
    };

    double low = 1.0 / dynamic_range;
    for (int iter = 0; iter < 40; ++iter) {
        const double dr = measure(low);
        if (dr > dynamic_range / 1.25 && dr < dynamic_range * 1.25) break;
        low = std::clamp(low * std::pow(dr / dynamic_range, 0.8), 1e-12, 1.0);
    }
    spec.components.front().low = low;
    return spec;
}

}  // namespace satrestore
