#pragma once

#include "texclass/classify.hpp"
#include "texclass/features.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace texclass {

struct SplitSpec {
    double train_fraction = 0.9;
    bool stratified = true;
    std::uint64_t seed = 0;
};

/// Indices into the input, each list ascending.
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Stratified mode shuffles each class separately and keeps
/// floor(n_c * fraction) samples per class for training, clamped so every
/// class keeps at least one sample on each side. Throws ClassTooSmall when a
/// class has fewer than 2 samples in stratified mode.
SplitIndices split_indices(std::span<const std::string> labels, const SplitSpec& spec);

std::pair<std::vector<FeatureVector>, std::vector<FeatureVector>> split(std::span<const FeatureVector> data,
                                                                        const SplitSpec& spec);

/// Rows are actual classes, columns predicted.
struct ConfusionMatrix {
    std::vector<std::string> classes;
    std::vector<std::size_t> counts;  // row-major C x C

    std::size_t size() const noexcept { return classes.size(); }
    std::size_t at(std::size_t actual, std::size_t predicted) const { return counts[actual * size() + predicted]; }
    std::size_t& at(std::size_t actual, std::size_t predicted) { return counts[actual * size() + predicted]; }
    std::size_t total() const;

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(std::span<const std::string> actual, std::span<const std::string> predicted,
                          std::vector<std::string> classes);

enum class Averaging { Weighted, Macro };

/// Percentages, unrounded.
struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Per-class precision/recall/F1 (0 on empty denominators), averaged with
/// support weights (Weighted) or equally (Macro). Throws EmptyMatrix.
Metrics metrics(const ConfusionMatrix& cm, Averaging averaging = Averaging::Weighted);

/// Rounds half away from zero to two decimals, as printed in reports.
double round2(double percent);

// ---------------------------------------------------------------------------
// Experiment grid
// ---------------------------------------------------------------------------

enum class ClassifierKind { Knn, Rf, Ensemble };

std::string_view to_string(ClassifierKind k);

struct GridCell {
    FeatureVariant variant;
    ClassifierKind classifier;
    std::string_view name;
};

/// Row order of the published results table.
inline constexpr std::array<GridCell, 7> kGridCells = {{
    {FeatureVariant::Combined, ClassifierKind::Knn, "Combined + KNN"},
    {FeatureVariant::Combined, ClassifierKind::Rf, "Combined + RF"},
    {FeatureVariant::Lbp, ClassifierKind::Knn, "LBP + KNN"},
    {FeatureVariant::Lbp, ClassifierKind::Rf, "LBP + RF"},
    {FeatureVariant::Glcm, ClassifierKind::Knn, "GLCM + KNN"},
    {FeatureVariant::Glcm, ClassifierKind::Rf, "GLCM + RF"},
    {FeatureVariant::Combined, ClassifierKind::Ensemble, "Combined + VE"},
}};

struct GridConfig {
    ExtractionConfig extraction;
    double train_fraction = 0.9;
    bool stratified = true;
    bool standardize = true;
    int k = 5;
    RfConfig rf;
    Averaging averaging = Averaging::Weighted;
    std::uint64_t seed = 42;  // split and forest seeds derive from this

    nlohmann::json to_json() const;
};

struct EvaluationReport {
    std::string name;
    FeatureVariant variant = FeatureVariant::Combined;
    ClassifierKind classifier = ClassifierKind::Knn;
    bool failed = false;
    std::string error;
    Metrics metrics;
    ConfusionMatrix confusion;
};

struct GridResult {
    std::vector<EvaluationReport> reports;  // kGridCells order
    std::size_t train_size = 0;
    std::size_t test_size = 0;

    bool any_failed() const;
};

/// Runs every cell of kGridCells on one shared split of `combined`, which
/// must hold COMBINED vectors for cfg.extraction. The GLCM and LBP cells use
/// slices of the same vectors; the ensemble reuses the COMBINED KNN and RF.
GridResult run_grid(std::span<const FeatureVector> combined, const GridConfig& cfg);

/// Aligned text table with the published column layout.
std::string format_table(const GridResult& result);
nlohmann::json report_json(const GridResult& result, const nlohmann::json& config);
std::string confusion_csv(const ConfusionMatrix& cm);

/// Writes report.txt, report.json and confusion_<variant>_<model>.csv.
void write_reports(const GridResult& result, const nlohmann::json& config, const std::filesystem::path& out_dir);

}  // namespace texclass
