#include "texclass/features.hpp"

#include "csv.hpp"
#include "texclass/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

namespace texclass {

std::string_view to_string(FeatureVariant v) {
    switch (v) {
        case FeatureVariant::Glcm: return "glcm";
        case FeatureVariant::Lbp: return "lbp";
        case FeatureVariant::Combined: return "combined";
    }
    return "unknown";
}

std::optional<FeatureVariant> parse_variant(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "glcm") return FeatureVariant::Glcm;
    if (lower == "lbp") return FeatureVariant::Lbp;
    if (lower == "combined") return FeatureVariant::Combined;
    return std::nullopt;
}

void ExtractionConfig::validate() const {
    if (width < 3 || height < 3) {
        throw Error(ErrorCode::InvalidArgument, "resize target must be at least 3x3 for LBP, got " +
                                                    std::to_string(width) + "x" + std::to_string(height));
    }
    if (levels < 2 || levels > 256) {
        throw Error(ErrorCode::InvalidArgument, "levels must be in [2, 256], got " + std::to_string(levels));
    }
    if (distance < 1 || distance >= std::min(width, height)) {
        throw Error(ErrorCode::InvalidArgument,
                    "GLCM distance must be in [1, " + std::to_string(std::min(width, height) - 1) + "], got " +
                        std::to_string(distance));
    }
}

std::size_t feature_length(FeatureVariant variant, const ExtractionConfig& cfg) {
    const std::size_t glcm = glcm_block_length(cfg.aggregation);
    const std::size_t lbp = lbp_block_length(cfg.lbp_mode);
    switch (variant) {
        case FeatureVariant::Glcm: return glcm;
        case FeatureVariant::Lbp: return lbp;
        case FeatureVariant::Combined: return glcm + lbp;
    }
    return 0;
}

FeatureVector extract(const GrayImage& img, FeatureVariant variant, const ExtractionConfig& cfg, std::string label,
                      std::string source) {
    const GrayImage work = resize(img, cfg.width, cfg.height, cfg.interpolation);

    FeatureVector fv;
    fv.variant = variant;
    fv.label = std::move(label);
    fv.source = std::move(source);
    fv.values.reserve(feature_length(variant, cfg));
    if (variant != FeatureVariant::Lbp) {
        const auto glcm = glcm_feature_block(quantize(work, cfg.levels), cfg.distance, cfg.aggregation);
        fv.values.insert(fv.values.end(), glcm.begin(), glcm.end());
    }
    if (variant != FeatureVariant::Glcm) {
        const auto lbp = lbp_histogram(work, {cfg.lbp_mode});
        fv.values.insert(fv.values.end(), lbp.bins.begin(), lbp.bins.end());
    }
    for (double v : fv.values) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite feature in " + fv.source);
    }
    return fv;
}

FeatureVector slice_variant(const FeatureVector& combined, FeatureVariant variant, const ExtractionConfig& cfg) {
    if (combined.variant != FeatureVariant::Combined ||
        combined.values.size() != feature_length(FeatureVariant::Combined, cfg)) {
        throw Error(ErrorCode::DimensionMismatch, "slice_variant expects a COMBINED vector for this config");
    }
    if (variant == FeatureVariant::Combined) return combined;
    const auto glcm_len = static_cast<std::ptrdiff_t>(glcm_block_length(cfg.aggregation));
    FeatureVector out{variant, {}, combined.label, combined.source};
    if (variant == FeatureVariant::Glcm) {
        out.values.assign(combined.values.begin(), combined.values.begin() + glcm_len);
    } else {
        out.values.assign(combined.values.begin() + glcm_len, combined.values.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Standardization
// ---------------------------------------------------------------------------

std::vector<double> Standardizer::transform(std::span<const double> v) const {
    if (v.size() != mean.size()) {
        throw Error(ErrorCode::DimensionMismatch, "standardizer expects " + std::to_string(mean.size()) +
                                                      " dimensions, got " + std::to_string(v.size()));
    }
    std::vector<double> out(v.size());
    for (std::size_t d = 0; d < v.size(); ++d) out[d] = (v[d] - mean[d]) / stddev[d];
    return out;
}

std::vector<double> Standardizer::inverse(std::span<const double> v) const {
    if (v.size() != mean.size()) {
        throw Error(ErrorCode::DimensionMismatch, "standardizer expects " + std::to_string(mean.size()) +
                                                      " dimensions, got " + std::to_string(v.size()));
    }
    std::vector<double> out(v.size());
    for (std::size_t d = 0; d < v.size(); ++d) out[d] = v[d] * stddev[d] + mean[d];
    return out;
}

Standardizer fit_standardizer(std::span<const std::vector<double>> rows) {
    if (rows.size() < 2) {
        throw Error(ErrorCode::EmptyTrainingSet,
                    "standardizer needs at least 2 vectors, got " + std::to_string(rows.size()));
    }
    const std::size_t dim = rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != dim) throw Error(ErrorCode::MixedLengths, "training vectors have different lengths");
    }
    const auto n = static_cast<double>(rows.size());
    Standardizer s;
    s.mean.assign(dim, 0.0);
    s.stddev.assign(dim, 0.0);
    for (const auto& r : rows) {
        for (std::size_t d = 0; d < dim; ++d) s.mean[d] += r[d];
    }
    for (auto& m : s.mean) m /= n;
    for (const auto& r : rows) {
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = r[d] - s.mean[d];
            s.stddev[d] += diff * diff;
        }
    }
    for (auto& sd : s.stddev) sd = std::max(std::sqrt(sd / n), Standardizer::kStddevFloor);
    return s;
}

Standardizer fit_standardizer(std::span<const FeatureVector> train) {
    std::vector<std::vector<double>> rows;
    rows.reserve(train.size());
    for (const auto& fv : train) rows.push_back(fv.values);
    return fit_standardizer(rows);
}

FeatureVector apply_standardizer(const Standardizer& s, const FeatureVector& v) {
    FeatureVector out = v;
    out.values = s.transform(v.values);
    return out;
}

void save_standardizer(const Standardizer& s, const std::filesystem::path& path) {
    nlohmann::json doc = {{"format", "texclass-standardizer"}, {"version", 1}, {"mean", s.mean},
                          {"stddev", s.stddev}};
    csv::write_text(path, doc.dump(1) + "\n");
}

Standardizer load_standardizer(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, path.string() + ": " + e.what());
    }
    if (doc.value("format", "") != "texclass-standardizer" || doc.value("version", 0) != 1) {
        throw Error(ErrorCode::VersionMismatch, path.string() + " is not a version-1 standardizer");
    }
    Standardizer s;
    try {
        s.mean = doc.at("mean").get<std::vector<double>>();
        s.stddev = doc.at("stddev").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, path.string() + ": " + e.what());
    }
    if (s.mean.size() != s.stddev.size()) throw Error(ErrorCode::SchemaMismatch, "mean/stddev length differ");
    return s;
}

// ---------------------------------------------------------------------------
// Feature CSV
// ---------------------------------------------------------------------------

std::optional<FeatureVariant> variant_for_length(std::size_t length) {
    for (auto agg : {GlcmAggregation::Average, GlcmAggregation::Concatenate}) {
        for (auto mode : {LbpMode::RotationInvariant, LbpMode::Raw}) {
            const ExtractionConfig cfg{.aggregation = agg, .lbp_mode = mode};
            for (auto v : {FeatureVariant::Glcm, FeatureVariant::Lbp, FeatureVariant::Combined}) {
                if (feature_length(v, cfg) == length) return v;
            }
        }
    }
    return std::nullopt;
}

void save_features(std::span<const FeatureVector> set, const std::filesystem::path& path) {
    const std::size_t dim = set.empty() ? 0 : set.front().values.size();
    for (const auto& fv : set) {
        if (fv.values.size() != dim) throw Error(ErrorCode::MixedLengths, "feature set has mixed lengths");
        if (variant_for_length(dim) != fv.variant) {
            throw Error(ErrorCode::SchemaMismatch, "length " + std::to_string(dim) + " is not a valid " +
                                                       std::string(to_string(fv.variant)) + " vector");
        }
    }
    std::string text = "source,label";
    for (std::size_t d = 0; d < dim; ++d) text += ",f" + std::to_string(d);
    text += '\n';
    for (const auto& fv : set) {
        text += csv::escape(fv.source);
        text += ',';
        text += csv::escape(fv.label);
        for (double v : fv.values) {
            text += ',';
            text += csv::format_double(v);
        }
        text += '\n';
    }
    csv::write_text(path, text);
}

std::vector<FeatureVector> load_features(const std::filesystem::path& path, std::optional<FeatureSchema> expected) {
    const auto lines = csv::read_lines(path);
    if (lines.empty()) throw Error(ErrorCode::SchemaMismatch, path.string() + ": missing header row");
    const auto header = csv::split_line(lines.front());
    if (header.size() < 2 || header[0] != "source" || header[1] != "label") {
        throw Error(ErrorCode::SchemaMismatch, path.string() + ": header must start with source,label");
    }
    const std::size_t dim = header.size() - 2;
    for (std::size_t d = 0; d < dim; ++d) {
        if (header[d + 2] != "f" + std::to_string(d)) {
            throw Error(ErrorCode::SchemaMismatch, path.string() + ": unexpected column '" + header[d + 2] + "'");
        }
    }

    std::optional<FeatureVariant> variant;
    if (dim > 0) {
        variant = variant_for_length(dim);
        if (!variant) {
            throw Error(ErrorCode::SchemaMismatch,
                        path.string() + ": " + std::to_string(dim) + " feature columns match no variant");
        }
    }
    if (expected && dim > 0 && (expected->length != dim || expected->variant != *variant)) {
        throw Error(ErrorCode::SchemaMismatch, path.string() + ": expected " + std::to_string(expected->length) +
                                                   " " + std::string(to_string(expected->variant)) +
                                                   " features, file has " + std::to_string(dim) + " (" +
                                                   std::string(to_string(*variant)) + ")");
    }

    std::vector<FeatureVector> out;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        if (lines[row].empty()) continue;
        if (!variant) throw Error(ErrorCode::SchemaMismatch, path.string() + ": data rows without feature columns");
        auto fields = csv::split_line(lines[row]);
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::SchemaMismatch, path.string() + ":" + std::to_string(row + 1) + ": expected " +
                                                       std::to_string(header.size()) + " fields, got " +
                                                       std::to_string(fields.size()));
        }
        FeatureVector fv;
        fv.variant = *variant;
        fv.source = std::move(fields[0]);
        fv.label = std::move(fields[1]);
        fv.values.reserve(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            const double v = csv::parse_double(fields[d + 2]);
            if (!std::isfinite(v)) throw Error(ErrorCode::SchemaMismatch, "non-finite feature value");
            fv.values.push_back(v);
        }
        out.push_back(std::move(fv));
    }
    return out;
}

}  // namespace texclass
