#include "satrestore/nonlocal/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "satrestore/core/error.hpp"

namespace satrestore {

namespace {

// In-place softmax with max subtraction.
void softmax(std::span<double> row) {
    const double m = *std::max_element(row.begin(), row.end());
    double sum = 0.0;
    for (double& v : row) {
        v = std::exp(v - m);
        sum += v;
    }
    for (double& v : row) v /= sum;
}

void check_params(const FeatureMap& x, const NdmParams& p) {
    const std::size_t cc = static_cast<std::size_t>(x.channels()) * x.channels();
    if (p.channels != x.channels() || p.key.size() != cc || p.query.size() != cc || p.value.size() != cc) {
        throw ShapeError("non-local projections must be " + std::to_string(x.channels()) + "x" +
                         std::to_string(x.channels()));
    }
}

// Position-major copy: out[n * C + c].
std::vector<double> positions_major(const FeatureMap& x) {
    const int c = x.channels();
    const int n = x.positions();
    std::vector<double> out(static_cast<std::size_t>(c) * n);
    for (int ch = 0; ch < c; ++ch) {
        const auto plane = x.plane(ch);
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i) * c + ch] = plane[i];
    }
    return out;
}

void spatial_scores(const std::vector<double>& keys, const std::vector<double>& queries, int c, int n, int j,
                    std::span<double> row) {
    const double* q = queries.data() + static_cast<std::size_t>(j) * c;
    for (int i = 0; i < n; ++i) {
        const double* k = keys.data() + static_cast<std::size_t>(i) * c;
        double dot = 0.0;
        for (int ch = 0; ch < c; ++ch) dot += k[ch] * q[ch];
        row[i] = dot;
    }
    softmax(row);
}

}  // namespace

NdmParams NdmParams::identity(int channels) {
    NdmParams p = zeros(channels);
    for (int i = 0; i < channels; ++i) {
        const std::size_t d = static_cast<std::size_t>(i) * channels + i;
        p.key[d] = p.query[d] = p.value[d] = 1.0;
    }
    return p;
}

NdmParams NdmParams::zeros(int channels) {
    if (channels < 1) throw ShapeError("NdmParams: channels must be >= 1");
    const std::size_t cc = static_cast<std::size_t>(channels) * channels;
    return NdmParams{channels, std::vector<double>(cc, 0.0), std::vector<double>(cc, 0.0),
                     std::vector<double>(cc, 0.0)};
}

NdmParams NdmParams::from_tensors(const TensorFile& file, const std::string& prefix) {
    const Tensor& k = file.at(prefix + "key");
    if (k.shape.size() != 2 || k.shape[0] != k.shape[1]) throw ShapeError(prefix + "key must be square [C, C]");
    const int c = k.shape[0];
    return NdmParams{c, k.values, file.expect(prefix + "query", {c, c}).values,
                     file.expect(prefix + "value", {c, c}).values};
}

void NdmParams::to_tensors(TensorFile& file, const std::string& prefix) const {
    file.set(prefix + "key", {{channels, channels}, key});
    file.set(prefix + "query", {{channels, channels}, query});
    file.set(prefix + "value", {{channels, channels}, value});
}

FeatureMap project_1x1(const FeatureMap& x, const std::vector<double>& kernel) {
    const int c = x.channels();
    if (kernel.size() != static_cast<std::size_t>(c) * c) throw ShapeError("project_1x1: kernel must be C x C");
    FeatureMap out(c, x.height(), x.width());
    const int n = x.positions();
    for (int o = 0; o < c; ++o) {
        auto dst = out.plane(o);
        for (int i = 0; i < c; ++i) {
            const double k = kernel[static_cast<std::size_t>(o) * c + i];
            if (k == 0.0) continue;
            const auto src = x.plane(i);
            for (int p = 0; p < n; ++p) dst[p] += k * src[p];
        }
    }
    return out;
}

std::vector<double> spatial_similarity(const FeatureMap& x, const NdmParams& p) {
    check_params(x, p);
    const int n = x.positions();
    if (n > kMaxMaterializedPositions) {
        throw Error("spatial_similarity: N = " + std::to_string(n) + " exceeds " +
                    std::to_string(kMaxMaterializedPositions));
    }
    const int c = x.channels();
    const auto keys = positions_major(project_1x1(x, p.key));
    const auto queries = positions_major(project_1x1(x, p.query));
    std::vector<double> s(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        spatial_scores(keys, queries, c, n, j, std::span<double>(s).subspan(static_cast<std::size_t>(j) * n, n));
    }
    return s;
}

std::vector<double> channel_similarity(const FeatureMap& x) {
    const int c = x.channels();
    const int n = x.positions();
    std::vector<double> s(static_cast<std::size_t>(c) * c);
    for (int j = 0; j < c; ++j) {
        const auto xj = x.plane(j);
        auto row = std::span<double>(s).subspan(static_cast<std::size_t>(j) * c, c);
        for (int i = 0; i < c; ++i) {
            const auto xi = x.plane(i);
            double dot = 0.0;
            for (int q = 0; q < n; ++q) dot += xi[q] * xj[q];
            row[i] = dot;
        }
        softmax(row);
    }
    return s;
}

FeatureMap nonlocal_spatial(const FeatureMap& x, const NdmParams& p) {
    check_params(x, p);
    const int c = x.channels();
    const int n = x.positions();
    const auto keys = positions_major(project_1x1(x, p.key));
    const auto queries = positions_major(project_1x1(x, p.query));
    const auto values = positions_major(project_1x1(x, p.value));

    FeatureMap out = x;
    std::vector<double> row(static_cast<std::size_t>(n));
    std::vector<double> acc(static_cast<std::size_t>(c));
    for (int j = 0; j < n; ++j) {
        spatial_scores(keys, queries, c, n, j, row);
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const double s = row[i];
            const double* v = values.data() + static_cast<std::size_t>(i) * c;
            for (int ch = 0; ch < c; ++ch) acc[ch] += s * v[ch];
        }
        for (int ch = 0; ch < c; ++ch) out.plane(ch)[j] += acc[ch];
    }
    return out;
}

FeatureMap nonlocal_channel(const FeatureMap& x) {
    const int c = x.channels();
    const int n = x.positions();
    const auto s = channel_similarity(x);
    FeatureMap out = x;
    for (int j = 0; j < c; ++j) {
        auto dst = out.plane(j);
        for (int i = 0; i < c; ++i) {
            const double w = s[static_cast<std::size_t>(j) * c + i];
            const auto xi = x.plane(i);
            for (int q = 0; q < n; ++q) dst[q] += w * xi[q];
        }
    }
    return out;
}

FeatureMap ndm_forward(const FeatureMap& x, const NdmParams& p, NdmOrder order) {
    if (order == NdmOrder::SpatialThenChannel) return nonlocal_channel(nonlocal_spatial(x, p));
    return nonlocal_spatial(nonlocal_channel(x), p);
}

}  // namespace satrestore
