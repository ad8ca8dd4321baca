#pragma once

#include "texclass/glcm.hpp"
#include "texclass/imaging.hpp"
#include "texclass/lbp.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace texclass {

enum class FeatureVariant { Glcm, Lbp, Combined };

std::string_view to_string(FeatureVariant v);
/// Accepts "glcm", "lbp", "combined" (case-insensitive).
std::optional<FeatureVariant> parse_variant(std::string_view text);

/// Everything that affects what extract() produces.
struct ExtractionConfig {
    int width = 128;
    int height = 128;
    int levels = 8;
    int distance = 1;
    GlcmAggregation aggregation = GlcmAggregation::Average;
    LbpMode lbp_mode = LbpMode::RotationInvariant;
    Interpolation interpolation = Interpolation::Bilinear;

    /// Throws InvalidArgument naming the first bad field.
    void validate() const;
};

struct FeatureVector {
    FeatureVariant variant = FeatureVariant::Combined;
    std::vector<double> values;
    std::string label;
    std::string source;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

std::size_t feature_length(FeatureVariant variant, const ExtractionConfig& cfg);

/// GLCM block on quantize(resize(img)), LBP block on resize(img); COMBINED is
/// GLCM followed by LBP.
FeatureVector extract(const GrayImage& img, FeatureVariant variant, const ExtractionConfig& cfg,
                      std::string label = {}, std::string source = {});

/// Cuts the GLCM or LBP block out of a COMBINED vector. Values are identical
/// to extracting that variant directly.
FeatureVector slice_variant(const FeatureVector& combined, FeatureVariant variant, const ExtractionConfig& cfg);

/// Z-score parameters, fitted on training vectors only.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;  // population convention, floored at kStddevFloor

    static constexpr double kStddevFloor = 1e-12;

    std::vector<double> transform(std::span<const double> v) const;
    std::vector<double> inverse(std::span<const double> v) const;

    friend bool operator==(const Standardizer&, const Standardizer&) = default;
};

Standardizer fit_standardizer(std::span<const FeatureVector> train);
Standardizer fit_standardizer(std::span<const std::vector<double>> rows);
FeatureVector apply_standardizer(const Standardizer& s, const FeatureVector& v);

void save_standardizer(const Standardizer& s, const std::filesystem::path& path);
Standardizer load_standardizer(const std::filesystem::path& path);

/// Expected shape when loading a feature CSV.
struct FeatureSchema {
    FeatureVariant variant;
    std::size_t length;
};

/// Recovers the variant from a vector length. Every (variant, aggregation,
/// LBP mode) combination has a distinct length, so this is unambiguous.
std::optional<FeatureVariant> variant_for_length(std::size_t length);

/// CSV: header `source,label,f0,...,fN`, then one row per vector. Doubles are
/// written as shortest round-trip decimals.
void save_features(std::span<const FeatureVector> set, const std::filesystem::path& path);
std::vector<FeatureVector> load_features(const std::filesystem::path& path,
                                         std::optional<FeatureSchema> expected = std::nullopt);

}  // namespace texclass
