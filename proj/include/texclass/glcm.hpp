#pragma once

#include "texclass/imaging.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace texclass {

enum class GlcmAngle { Deg0, Deg45, Deg90, Deg135 };

inline constexpr std::array<GlcmAngle, 4> kGlcmAngles = {GlcmAngle::Deg0, GlcmAngle::Deg45,
                                                         GlcmAngle::Deg90, GlcmAngle::Deg135};

/// Pixel displacement for one orientation. y grows downwards, so 45 degrees
/// points up and to the right: (d, -d).
struct GlcmOffset {
    int distance = 1;
    GlcmAngle angle = GlcmAngle::Deg0;

    int dx() const noexcept;
    int dy() const noexcept;
};

/// Symmetric, normalized co-occurrence matrix with its (shared) marginal
/// mean and variance.
struct GlcmMatrix {
    int levels = 0;
    std::vector<double> p;  // levels x levels, row-major
    double mu = 0.0;
    double sigma2 = 0.0;

    double at(int i, int j) const { return p[static_cast<std::size_t>(i) * levels + j]; }
};

struct GlcmFeatures {
    double contrast = 0.0;
    double correlation = 0.0;
    double energy = 0.0;
    double homogeneity = 0.0;
    double entropy = 0.0;

    /// Frozen serialization order.
    std::array<double, 5> as_array() const { return {contrast, correlation, energy, homogeneity, entropy}; }
};

enum class GlcmAggregation { Average, Concatenate };

inline constexpr std::size_t kGlcmFeatureCount = 5;

/// Counts each in-bounds pair (p, p + offset) into both (i,j) and (j,i), then
/// normalizes. Throws NoValidPairs when the offset does not fit in the image.
GlcmMatrix compute_glcm(const QuantizedImage& img, const GlcmOffset& offset);

/// Builds a GlcmMatrix from raw symmetric pair counts. compute_glcm goes
/// through here; exposed so alternative counting routes share normalization.
GlcmMatrix glcm_from_counts(int levels, const std::vector<std::uint64_t>& counts);

double contrast(const GlcmMatrix& m);
/// Returns 1.0 when sigma2 < 1e-12 (single gray level present).
double correlation(const GlcmMatrix& m);
double energy(const GlcmMatrix& m);
double homogeneity(const GlcmMatrix& m);
/// Natural log, with 0 ln 0 = 0.
double glcm_entropy(const GlcmMatrix& m);

GlcmFeatures glcm_features(const GlcmMatrix& m);

/// Five features at each of the four orientations. Average gives 5 values;
/// Concatenate gives 20 in angle-major order (0, 45, 90, 135).
std::vector<double> glcm_feature_block(const QuantizedImage& img, int distance = 1,
                                       GlcmAggregation aggregation = GlcmAggregation::Average);

constexpr std::size_t glcm_block_length(GlcmAggregation aggregation) noexcept {
    return aggregation == GlcmAggregation::Average ? kGlcmFeatureCount : 4 * kGlcmFeatureCount;
}

}  // namespace texclass
