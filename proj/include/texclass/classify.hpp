#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace texclass {

/// Labels are indices into an ordered class list; that order is also the
/// score-vector order and the tie-break order.
struct TrainingSet {
    std::vector<std::vector<double>> x;
    std::vector<std::size_t> y;
    std::vector<std::string> classes;

    std::size_t size() const noexcept { return x.size(); }
    std::size_t dim() const noexcept { return x.empty() ? 0 : x.front().size(); }

    /// Throws InsufficientData, MixedLengths or UnknownLabel on inconsistent contents.
    void validate() const;
};

/// Per-class scores (non-negative, summing to 1) and the winning class index.
struct Prediction {
    std::size_t label = 0;
    std::vector<double> scores;

    friend bool operator==(const Prediction&, const Prediction&) = default;
};

double euclidean(std::span<const double> p, std::span<const double> q);

/// First index holding the maximum score.
std::size_t argmax_lowest(std::span<const double> scores);

// ---------------------------------------------------------------------------
// KNN
// ---------------------------------------------------------------------------

struct KnnModel {
    int k = 5;
    TrainingSet train;
};

/// k must be odd, positive and not larger than the training set.
KnnModel knn_fit(TrainingSet train, int k = 5);

/// Distance ties go to the lower training index. Score ties go to the tied
/// class that owns the nearest of the k neighbors.
Prediction knn_predict(const KnnModel& m, std::span<const double> v);

// ---------------------------------------------------------------------------
// Random forest
// ---------------------------------------------------------------------------

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;   // samples with value <= threshold
    int right = -1;
    std::vector<double> freq;  // leaves only

    bool is_leaf() const noexcept { return feature < 0; }
    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Flat node array; node 0 is the root, children follow in preorder.
struct DecisionTree {
    std::vector<TreeNode> nodes;

    const std::vector<double>& leaf_for(std::span<const double> v) const;
    friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct RfConfig {
    int trees = 100;
    int max_features = 0;  // 0 selects round(sqrt(dim))
    bool bootstrap = true;
    unsigned threads = 0;  // 0 selects hardware concurrency; result does not depend on it
};

struct RfModel {
    std::vector<DecisionTree> trees;
    std::vector<std::string> classes;
    std::size_t dim = 0;
    int max_features = 1;
    bool bootstrap = true;
    std::uint64_t seed = 0;
    bool degenerate = false;  // set when training data held a single class

    friend bool operator==(const RfModel&, const RfModel&) = default;
};

/// Tree t draws from an RNG seeded with derive_seed(seed, t). Throws
/// InsufficientData with fewer than 2 samples.
RfModel rf_train(const TrainingSet& data, const RfConfig& cfg, std::uint64_t seed);
Prediction rf_predict(const RfModel& m, std::span<const double> v);

/// Weighted Gini impurity of a candidate split.
struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;
};

/// 1 - sum_c p_c^2 over a class-count vector.
double gini(std::span<const std::size_t> counts);

/// Best split of `samples` (indices into data, repeats allowed) over the
/// given features. Candidate thresholds are midpoints between consecutive
/// distinct values; ties keep the lowest feature, then the lowest threshold.
/// Empty when no feature has two distinct values.
std::optional<SplitChoice> best_split(const TrainingSet& data, std::span<const std::size_t> samples,
                                      std::span<const int> features);

// ---------------------------------------------------------------------------
// Voting ensemble
// ---------------------------------------------------------------------------

/// Soft voting: mean of the KNN and RF score vectors.
struct EnsembleModel {
    KnnModel knn;
    RfModel rf;
};

/// Throws InvalidArgument when the members disagree on classes or dimension.
EnsembleModel make_ensemble(KnnModel knn, RfModel rf);
Prediction ensemble_predict(const EnsembleModel& m, std::span<const double> v);

// ---------------------------------------------------------------------------
// Any model + persistence
// ---------------------------------------------------------------------------

using Model = std::variant<KnnModel, RfModel, EnsembleModel>;

Prediction predict(const Model& m, std::span<const double> v);
const std::vector<std::string>& model_classes(const Model& m);
std::size_t model_dim(const Model& m);
std::string_view model_kind(const Model& m);

inline constexpr int kModelFormatVersion = 1;

/// Versioned JSON document. `metadata` is stored verbatim and returned by
/// load_model_file; the classifiers never read it.
nlohmann::json model_to_json(const Model& m, const nlohmann::json& metadata = nullptr);
Model model_from_json(const nlohmann::json& doc);

struct ModelFile {
    Model model;
    nlohmann::json metadata;
};

void save_model(const Model& m, const std::filesystem::path& path, const nlohmann::json& metadata = nullptr);
ModelFile load_model_file(const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace texclass
