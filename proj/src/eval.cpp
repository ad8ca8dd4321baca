#include "texclass/eval.hpp"

#include "csv.hpp"
#include "texclass/error.hpp"
#include "texclass/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>

namespace texclass {

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

namespace {

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.index(i));
        std::swap(v[i - 1], v[j]);
    }
}

std::size_t train_count(std::size_t n, double fraction) {
    auto t = static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction + 1e-9));
    if (n >= 2) t = std::clamp<std::size_t>(t, 1, n - 1);
    return t;
}

}  // namespace

SplitIndices split_indices(std::span<const std::string> labels, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "train fraction must be in (0, 1)");
    }
    Rng rng(spec.seed);
    SplitIndices out;
    auto take = [&](std::vector<std::size_t>& members) {
        shuffle(members, rng);
        const std::size_t t = train_count(members.size(), spec.train_fraction);
        out.train.insert(out.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(t));
        out.test.insert(out.test.end(), members.begin() + static_cast<std::ptrdiff_t>(t), members.end());
    };

    if (spec.stratified) {
        std::map<std::string, std::vector<std::size_t>> groups;  // sorted by class name
        for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
        for (auto& [name, members] : groups) {
            if (members.size() < 2) {
                throw Error(ErrorCode::ClassTooSmall, "class '" + name + "' has " + std::to_string(members.size()) +
                                                          " sample(s); stratified split needs 2");
            }
        }
        for (auto& [name, members] : groups) take(members);
    } else {
        std::vector<std::size_t> all(labels.size());
        std::iota(all.begin(), all.end(), 0);
        take(all);
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

std::pair<std::vector<FeatureVector>, std::vector<FeatureVector>> split(std::span<const FeatureVector> data,
                                                                        const SplitSpec& spec) {
    std::vector<std::string> labels;
    labels.reserve(data.size());
    for (const auto& fv : data) labels.push_back(fv.label);
    const auto idx = split_indices(labels, spec);
    std::pair<std::vector<FeatureVector>, std::vector<FeatureVector>> out;
    for (auto i : idx.train) out.first.push_back(data[i]);
    for (auto i : idx.test) out.second.push_back(data[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Confusion matrix and metrics
// ---------------------------------------------------------------------------

std::size_t ConfusionMatrix::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

ConfusionMatrix confusion(std::span<const std::string> actual, std::span<const std::string> predicted,
                          std::vector<std::string> classes) {
    if (actual.size() != predicted.size()) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(actual.size()) + " actual labels vs " +
                                                   std::to_string(predicted.size()) + " predictions");
    }
    ConfusionMatrix cm;
    cm.counts.assign(classes.size() * classes.size(), 0);
    cm.classes = std::move(classes);
    auto index_of = [&cm](const std::string& label) {
        const auto it = std::find(cm.classes.begin(), cm.classes.end(), label);
        if (it == cm.classes.end()) throw Error(ErrorCode::UnknownLabel, "label '" + label + "' not in class list");
        return static_cast<std::size_t>(it - cm.classes.begin());
    };
    for (std::size_t i = 0; i < actual.size(); ++i) ++cm.at(index_of(actual[i]), index_of(predicted[i]));
    return cm;
}

Metrics metrics(const ConfusionMatrix& cm, Averaging averaging) {
    const std::size_t total = cm.total();
    if (total == 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix has no samples");
    const std::size_t c_count = cm.size();

    std::size_t trace = 0;
    for (std::size_t c = 0; c < c_count; ++c) trace += cm.at(c, c);

    Metrics m;
    m.accuracy = 100.0 * static_cast<double>(trace) / static_cast<double>(total);
    for (std::size_t c = 0; c < c_count; ++c) {
        std::size_t row = 0;
        std::size_t col = 0;
        for (std::size_t o = 0; o < c_count; ++o) {
            row += cm.at(c, o);
            col += cm.at(o, c);
        }
        const auto tp = static_cast<double>(cm.at(c, c));
        const double precision = col ? tp / static_cast<double>(col) : 0.0;
        const double recall = row ? tp / static_cast<double>(row) : 0.0;
        const double f1 = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
        const double weight = averaging == Averaging::Weighted
                                  ? static_cast<double>(row) / static_cast<double>(total)
                                  : 1.0 / static_cast<double>(c_count);
        m.precision += weight * precision;
        m.recall += weight * recall;
        m.f1 += weight * f1;
    }
    m.precision *= 100.0;
    m.recall *= 100.0;
    m.f1 *= 100.0;
    return m;
}

double round2(double percent) { return std::round(percent * 100.0) / 100.0; }

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

std::string_view to_string(ClassifierKind k) {
    switch (k) {
        case ClassifierKind::Knn: return "knn";
        case ClassifierKind::Rf: return "rf";
        case ClassifierKind::Ensemble: return "ensemble";
    }
    return "unknown";
}

nlohmann::json GridConfig::to_json() const {
    return {
        {"resize", {extraction.width, extraction.height}},
        {"levels", extraction.levels},
        {"distance", extraction.distance},
        {"aggregation", extraction.aggregation == GlcmAggregation::Average ? "average" : "concatenate"},
        {"lbp_mode", extraction.lbp_mode == LbpMode::Raw ? "raw" : "ri"},
        {"train_fraction", train_fraction},
        {"stratified", stratified},
        {"standardize", standardize},
        {"k", k},
        {"trees", rf.trees},
        {"max_features", rf.max_features},
        {"averaging", averaging == Averaging::Weighted ? "weighted" : "macro"},
        {"seed", seed},
    };
}

bool GridResult::any_failed() const {
    return std::any_of(reports.begin(), reports.end(), [](const EvaluationReport& r) { return r.failed; });
}

namespace {

struct VariantData {
    TrainingSet train;
    std::vector<std::vector<double>> test_x;
};

VariantData prepare(std::span<const FeatureVector> combined, FeatureVariant variant, const GridConfig& cfg,
                    const SplitIndices& idx, const std::vector<std::string>& classes) {
    auto rows = [&](const std::vector<std::size_t>& which) {
        std::vector<std::vector<double>> out;
        out.reserve(which.size());
        for (auto i : which) out.push_back(slice_variant(combined[i], variant, cfg.extraction).values);
        return out;
    };
    VariantData d;
    d.train.classes = classes;
    d.train.x = rows(idx.train);
    d.test_x = rows(idx.test);
    for (auto i : idx.train) {
        d.train.y.push_back(
            static_cast<std::size_t>(std::find(classes.begin(), classes.end(), combined[i].label) - classes.begin()));
    }
    if (cfg.standardize) {
        const auto s = fit_standardizer(d.train.x);
        for (auto& r : d.train.x) r = s.transform(r);
        for (auto& r : d.test_x) r = s.transform(r);
    }
    return d;
}

}  // namespace

GridResult run_grid(std::span<const FeatureVector> combined, const GridConfig& cfg) {
    cfg.extraction.validate();
    if (combined.empty()) throw Error(ErrorCode::EmptyDataset, "no feature vectors to evaluate");

    std::vector<std::string> labels;
    for (const auto& fv : combined) labels.push_back(fv.label);
    std::vector<std::string> classes = labels;
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

    const SplitSpec spec{cfg.train_fraction, cfg.stratified, derive_seed(cfg.seed, kStageSplit)};
    const auto idx = split_indices(labels, spec);
    std::vector<std::string> actual;
    for (auto i : idx.test) actual.push_back(labels[i]);

    RfConfig rf_cfg = cfg.rf;
    const std::uint64_t forest_seed = derive_seed(cfg.seed, kStageForest);

    GridResult result;
    result.train_size = idx.train.size();
    result.test_size = idx.test.size();

    std::map<FeatureVariant, VariantData> data;
    std::optional<KnnModel> combined_knn;
    std::optional<RfModel> combined_rf;

    for (const auto& cell : kGridCells) {
        EvaluationReport report;
        report.name = std::string(cell.name);
        report.variant = cell.variant;
        report.classifier = cell.classifier;
        try {
            if (!data.contains(cell.variant)) data.emplace(cell.variant, prepare(combined, cell.variant, cfg, idx, classes));
            const auto& d = data.at(cell.variant);

            Model model;
            switch (cell.classifier) {
                case ClassifierKind::Knn:
                    model = knn_fit(d.train, cfg.k);
                    if (cell.variant == FeatureVariant::Combined) combined_knn = std::get<KnnModel>(model);
                    break;
                case ClassifierKind::Rf:
                    model = rf_train(d.train, rf_cfg, forest_seed);
                    if (cell.variant == FeatureVariant::Combined) combined_rf = std::get<RfModel>(model);
                    break;
                case ClassifierKind::Ensemble:
                    if (!combined_knn || !combined_rf) {
                        throw Error(ErrorCode::InvalidArgument, "ensemble members failed to train");
                    }
                    model = make_ensemble(*combined_knn, *combined_rf);
                    break;
            }
            std::vector<std::string> predicted;
            predicted.reserve(d.test_x.size());
            for (const auto& x : d.test_x) predicted.push_back(classes[predict(model, x).label]);
            report.confusion = confusion(actual, predicted, classes);
            report.metrics = metrics(report.confusion, cfg.averaging);
        } catch (const Error& e) {
            report.failed = true;
            report.error = e.what();
        }
        result.reports.push_back(std::move(report));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Report output
// ---------------------------------------------------------------------------

std::string format_table(const GridResult& result) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-18s %12s %13s %10s %12s\n", "Model", "Accuracy (%)", "Precision (%)",
                  "Recall (%)", "F1-score (%)");
    out += line;
    for (const auto& r : result.reports) {
        if (r.failed) {
            std::snprintf(line, sizeof line, "%-18s FAILED: %s\n", r.name.c_str(), r.error.c_str());
        } else {
            std::snprintf(line, sizeof line, "%-18s %12.2f %13.2f %10.2f %12.2f\n", r.name.c_str(),
                          round2(r.metrics.accuracy), round2(r.metrics.precision), round2(r.metrics.recall),
                          round2(r.metrics.f1));
        }
        out += line;
    }
    return out;
}

nlohmann::json report_json(const GridResult& result, const nlohmann::json& config) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.reports) {
        nlohmann::json row = {{"name", r.name},
                              {"variant", to_string(r.variant)},
                              {"classifier", to_string(r.classifier)},
                              {"failed", r.failed}};
        if (r.failed) {
            row["error"] = r.error;
        } else {
            const auto& m = r.metrics;
            row["metrics"] = {{"accuracy", m.accuracy}, {"precision", m.precision}, {"recall", m.recall},
                              {"f1", m.f1}};
            row["rounded"] = {{"accuracy", round2(m.accuracy)}, {"precision", round2(m.precision)},
                              {"recall", round2(m.recall)}, {"f1", round2(m.f1)}};
            nlohmann::json counts = nlohmann::json::array();
            for (std::size_t a = 0; a < r.confusion.size(); ++a) {
                nlohmann::json rowc = nlohmann::json::array();
                for (std::size_t p = 0; p < r.confusion.size(); ++p) rowc.push_back(r.confusion.at(a, p));
                counts.push_back(std::move(rowc));
            }
            row["confusion"] = {{"classes", r.confusion.classes}, {"counts", std::move(counts)}};
        }
        rows.push_back(std::move(row));
    }
    return {{"format", "texclass-report"},
            {"version", 1},
            {"config", config},
            {"train_size", result.train_size},
            {"test_size", result.test_size},
            {"reports", std::move(rows)}};
}

std::string confusion_csv(const ConfusionMatrix& cm) {
    std::string out = "actual\\predicted";
    for (const auto& c : cm.classes) out += "," + csv::escape(c);
    out += '\n';
    for (std::size_t a = 0; a < cm.size(); ++a) {
        out += csv::escape(cm.classes[a]);
        for (std::size_t p = 0; p < cm.size(); ++p) out += "," + std::to_string(cm.at(a, p));
        out += '\n';
    }
    return out;
}

void write_reports(const GridResult& result, const nlohmann::json& config, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + out_dir.string() + ": " + ec.message());
    csv::write_text(out_dir / "report.txt", format_table(result));
    csv::write_text(out_dir / "report.json", report_json(result, config).dump(2) + "\n");
    for (const auto& r : result.reports) {
        if (r.failed) continue;
        const auto name = "confusion_" + std::string(to_string(r.variant)) + "_" +
                          std::string(to_string(r.classifier)) + ".csv";
        csv::write_text(out_dir / name, confusion_csv(r.confusion));
    }
}

}  // namespace texclass
