#include "texclass/glcm.hpp"

#include "texclass/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace texclass {

int GlcmOffset::dx() const noexcept {
    switch (angle) {
        case GlcmAngle::Deg0:
        case GlcmAngle::Deg45: return distance;
        case GlcmAngle::Deg90: return 0;
        case GlcmAngle::Deg135: return -distance;
    }
    return 0;
}

int GlcmOffset::dy() const noexcept { return angle == GlcmAngle::Deg0 ? 0 : -distance; }

GlcmMatrix glcm_from_counts(int levels, const std::vector<std::uint64_t>& counts) {
    const auto n = static_cast<std::size_t>(levels);
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw Error(ErrorCode::NoValidPairs, "co-occurrence matrix has no pairs");

    GlcmMatrix m;
    m.levels = levels;
    m.p.resize(n * n);
    const auto denom = static_cast<double>(total);
    for (std::size_t k = 0; k < n * n; ++k) m.p[k] = static_cast<double>(counts[k]) / denom;

    // Marginal from row sums; by symmetry the column marginal is identical.
    std::vector<double> marginal(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) marginal[i] += m.p[i * n + j];
    }
    for (std::size_t i = 0; i < n; ++i) m.mu += static_cast<double>(i) * marginal[i];
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(i) - m.mu;
        m.sigma2 += d * d * marginal[i];
    }
    return m;
}

GlcmMatrix compute_glcm(const QuantizedImage& img, const GlcmOffset& offset) {
    if (offset.distance < 1) throw Error(ErrorCode::InvalidArgument, "GLCM distance must be >= 1");
    const int dx = offset.dx();
    const int dy = offset.dy();
    const int w = img.width();
    const int h = img.height();

    // Source pixels whose partner (x+dx, y+dy) is inside the image.
    const int x_begin = std::max(0, -dx);
    const int x_end = std::min(w, w - dx);
    const int y_begin = std::max(0, -dy);
    const int y_end = std::min(h, h - dy);
    if (x_begin >= x_end || y_begin >= y_end) {
        throw Error(ErrorCode::NoValidPairs, "offset (" + std::to_string(dx) + "," + std::to_string(dy) +
                                                 ") does not fit a " + std::to_string(w) + "x" +
                                                 std::to_string(h) + " image");
    }

    const auto n = static_cast<std::size_t>(img.levels());
    std::vector<std::uint64_t> counts(n * n, 0);
    const auto data = img.data();
    const auto stride = static_cast<std::ptrdiff_t>(w);
    const std::ptrdiff_t delta = dy * stride + dx;
    for (int y = y_begin; y < y_end; ++y) {
        const std::uint8_t* row = data.data() + y * stride;
        for (int x = x_begin; x < x_end; ++x) {
            const std::size_t i = row[x];
            const std::size_t j = row[x + delta];
            ++counts[i * n + j];
            ++counts[j * n + i];
        }
    }
    return glcm_from_counts(img.levels(), counts);
}

double contrast(const GlcmMatrix& m) {
    double sum = 0.0;
    for (int i = 0; i < m.levels; ++i) {
        for (int j = 0; j < m.levels; ++j) {
            const double d = i - j;
            sum += m.at(i, j) * d * d;
        }
    }
    return sum;
}

double correlation(const GlcmMatrix& m) {
    constexpr double kDegenerateVariance = 1e-12;
    if (m.sigma2 < kDegenerateVariance) return 1.0;
    double sum = 0.0;
    for (int i = 0; i < m.levels; ++i) {
        for (int j = 0; j < m.levels; ++j) sum += m.at(i, j) * (i - m.mu) * (j - m.mu);
    }
    return sum / m.sigma2;
}

double energy(const GlcmMatrix& m) {
    double sum = 0.0;
    for (double v : m.p) sum += v * v;
    return sum;
}

double homogeneity(const GlcmMatrix& m) {
    double sum = 0.0;
    for (int i = 0; i < m.levels; ++i) {
        for (int j = 0; j < m.levels; ++j) {
            const double d = i - j;
            sum += m.at(i, j) / (1.0 + d * d);
        }
    }
    return sum;
}

double glcm_entropy(const GlcmMatrix& m) {
    double sum = 0.0;
    for (double v : m.p) {
        if (v > 0.0) sum -= v * std::log(v);
    }
    return sum;
}

GlcmFeatures glcm_features(const GlcmMatrix& m) {
    return {contrast(m), correlation(m), energy(m), homogeneity(m), glcm_entropy(m)};
}

std::vector<double> glcm_feature_block(const QuantizedImage& img, int distance, GlcmAggregation aggregation) {
    std::vector<double> out;
    out.reserve(glcm_block_length(aggregation));
    std::array<double, kGlcmFeatureCount> mean{};
    for (GlcmAngle angle : kGlcmAngles) {
        const auto features = glcm_features(compute_glcm(img, {distance, angle})).as_array();
        if (aggregation == GlcmAggregation::Concatenate) {
            out.insert(out.end(), features.begin(), features.end());
        } else {
            for (std::size_t f = 0; f < kGlcmFeatureCount; ++f) mean[f] += features[f];
        }
    }
    if (aggregation == GlcmAggregation::Average) {
        for (double v : mean) out.push_back(v / static_cast<double>(kGlcmAngles.size()));
    }
    return out;
}

}  // namespace texclass
