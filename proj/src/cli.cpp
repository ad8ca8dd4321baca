#include "texclass/cli.hpp"

#include "texclass/classify.hpp"
#include "texclass/dataset.hpp"
#include "texclass/error.hpp"
#include "texclass/eval.hpp"
#include "texclass/features.hpp"
#include "texclass/random.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>
#include <optional>

namespace fs = std::filesystem;

namespace texclass {

namespace {

/// Thrown for invalid flag values found after CLI11 parsing; maps to exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExtractionFlags {
    int size = 128;
    int levels = 8;
    int distance = 1;
    std::string aggregation = "average";
    std::string lbp_mode = "ri";

    void add_to(CLI::App* app) {
        app->add_option("--size", size, "Working resolution (square) images are resized to")->check(CLI::PositiveNumber);
        app->add_option("--levels", levels, "Gray levels for GLCM quantization")->check(CLI::Range(2, 256));
        app->add_option("--distance", distance, "GLCM pixel distance")->check(CLI::PositiveNumber);
        app->add_option("--aggregation", aggregation, "GLCM aggregation over the four angles")
            ->check(CLI::IsMember({"average", "concatenate"}));
        app->add_option("--lbp-mode", lbp_mode, "LBP histogram mode")->check(CLI::IsMember({"raw", "ri"}));
    }

    ExtractionConfig config() const {
        ExtractionConfig cfg;
        cfg.width = size;
        cfg.height = size;
        cfg.levels = levels;
        cfg.distance = distance;
        cfg.aggregation = aggregation == "concatenate" ? GlcmAggregation::Concatenate : GlcmAggregation::Average;
        cfg.lbp_mode = lbp_mode == "raw" ? LbpMode::Raw : LbpMode::RotationInvariant;
        try {
            cfg.validate();
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        return cfg;
    }
};

nlohmann::json extraction_json(const ExtractionConfig& cfg) {
    return {{"width", cfg.width},
            {"height", cfg.height},
            {"levels", cfg.levels},
            {"distance", cfg.distance},
            {"aggregation", cfg.aggregation == GlcmAggregation::Average ? "average" : "concatenate"},
            {"lbp_mode", cfg.lbp_mode == LbpMode::Raw ? "raw" : "ri"}};
}

ExtractionConfig extraction_from_json(const nlohmann::json& j) {
    ExtractionConfig cfg;
    cfg.width = j.at("width").get<int>();
    cfg.height = j.at("height").get<int>();
    cfg.levels = j.at("levels").get<int>();
    cfg.distance = j.at("distance").get<int>();
    cfg.aggregation = j.at("aggregation").get<std::string>() == "concatenate" ? GlcmAggregation::Concatenate
                                                                              : GlcmAggregation::Average;
    cfg.lbp_mode = j.at("lbp_mode").get<std::string>() == "raw" ? LbpMode::Raw : LbpMode::RotationInvariant;
    cfg.validate();
    return cfg;
}

std::vector<std::string> sorted_classes(std::span<const FeatureVector> data) {
    std::vector<std::string> classes;
    for (const auto& fv : data) classes.push_back(fv.label);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

void require_directory_input(const std::string& path, const char* flag) {
    if (!fs::is_directory(path)) throw UsageError(std::string(flag) + " " + path + ": not a directory");
}

void make_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateCmd {
    std::string out;
    std::uint64_t seed = 42;
    int per_class = 20;
    int size = 128;
    double noise = 6.0;
    double rotation_step = 5.0;
    int rotations = 9;

    void add_to(CLI::App* app) {
        app->add_option("--out", out, "Output dataset directory")->required();
        app->add_option("--seed", seed, "Master seed");
        app->add_option("--per-class", per_class, "Original images per class");
        app->add_option("--size", size, "Image side length in pixels");
        app->add_option("--noise", noise, "Additive Gaussian noise sigma");
        app->add_option("--rotation-step", rotation_step, "Rotation augmentation step in degrees");
        app->add_option("--rotations", rotations, "Rotated copies per original");
    }

    int run(std::ostream& out_stream) const {
        SyntheticSpec spec;
        spec.per_class = per_class;
        spec.width = size;
        spec.height = size;
        spec.noise_sigma = noise;
        spec.seed = seed;
        try {
            spec.validate();
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        if (!(rotation_step > 0.0) || rotations < 0 || rotation_step * rotations >= 360.0) {
            throw UsageError("--rotation-step * --rotations must lie in (0, 360)");
        }

        make_directory(out);
        const auto originals = generate_synthetic(spec, out);
        const auto augmented = augment_rotations(originals, rotation_step, rotations, out);
        save_manifest(augmented, fs::path(out) / kManifestFileName);

        std::map<std::string, std::size_t> per_label;
        for (const auto& e : augmented.entries) ++per_label[e.label];
        out_stream << "generated " << augmented.entries.size() << " images (" << originals.entries.size()
                   << " originals x " << rotations + 1 << ") in " << out << "\n";
        for (const auto& [label, n] : per_label) out_stream << "  " << label << ": " << n << "\n";
        return kExitOk;
    }
};

// ---------------------------------------------------------------------------
// extract
// ---------------------------------------------------------------------------

struct ExtractCmd {
    std::string dataset;
    std::string out;
    std::string variant = "combined";
    ExtractionFlags flags;

    void add_to(CLI::App* app) {
        app->add_option("--dataset", dataset, "Dataset directory (class subdirectories or manifest.csv)")
            ->required();
        app->add_option("--out", out, "Output directory for features_<variant>.csv")->required();
        app->add_option("--variant", variant, "Feature variant")
            ->check(CLI::IsMember({"glcm", "lbp", "combined", "all"}));
        flags.add_to(app);
    }

    int run(std::ostream& out_stream, std::ostream& err) const {
        require_directory_input(dataset, "--dataset");
        const auto cfg = flags.config();
        const auto manifest = open_dataset(dataset);
        const auto batch = extract_manifest(manifest, FeatureVariant::Combined, cfg);
        for (const auto& f : batch.failures) err << "error: " << f << "\n";

        make_directory(out);
        std::vector<FeatureVariant> wanted;
        if (variant == "all") wanted = {FeatureVariant::Glcm, FeatureVariant::Lbp, FeatureVariant::Combined};
        else wanted = {*parse_variant(variant)};
        for (auto v : wanted) {
            std::vector<FeatureVector> set;
            set.reserve(batch.vectors.size());
            for (const auto& fv : batch.vectors) set.push_back(slice_variant(fv, v, cfg));
            const auto path = fs::path(out) / ("features_" + std::string(to_string(v)) + ".csv");
            save_features(set, path);
            out_stream << "wrote " << set.size() << " x " << feature_length(v, cfg) << " features to "
                       << path.string() << "\n";
        }
        if (!batch.failures.empty()) {
            err << batch.failures.size() << " image(s) failed\n";
            return kExitFailure;
        }
        return kExitOk;
    }
};

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainCmd {
    std::string features;
    std::string out;
    std::string model = "all";
    int k = 5;
    int trees = 100;
    int max_features = 0;
    bool no_standardize = false;
    std::uint64_t seed = 42;
    ExtractionFlags flags;

    void add_to(CLI::App* app) {
        app->add_option("--features", features, "Training feature CSV")->required();
        app->add_option("--out", out, "Output directory for model and standardizer files")->required();
        app->add_option("--model", model, "Classifier to train")
            ->check(CLI::IsMember({"knn", "rf", "ensemble", "all"}));
        app->add_option("--k", k, "KNN neighbor count (odd)");
        app->add_option("--trees", trees, "Random forest size");
        app->add_option("--max-features", max_features, "Features per split (0 = round(sqrt(dim)))");
        app->add_flag("--no-standardize", no_standardize, "Skip z-score standardization");
        app->add_option("--seed", seed, "Master seed");
        flags.add_to(app);
    }

    int run(std::ostream& out_stream) const {
        if (!fs::is_regular_file(features)) throw UsageError("--features " + features + ": no such file");
        const auto cfg = flags.config();
        std::vector<FeatureVector> data;
        try {
            data = load_features(features);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        if (data.empty()) throw UsageError("--features " + features + " holds no rows");
        const FeatureVariant variant = data.front().variant;
        const std::size_t dim = data.front().values.size();
        if (feature_length(variant, cfg) != dim) {
            throw UsageError("feature file has " + std::to_string(dim) + " columns but the extraction flags give " +
                             std::to_string(feature_length(variant, cfg)) + " for variant " +
                             std::string(to_string(variant)));
        }
        const bool want_knn = model == "knn" || model == "ensemble" || model == "all";
        const bool want_rf = model == "rf" || model == "ensemble" || model == "all";
        if (want_knn && (k < 1 || k % 2 == 0)) throw UsageError("--k must be a positive odd number");
        if (want_knn && static_cast<std::size_t>(k) > data.size()) {
            throw UsageError("--k " + std::to_string(k) + " exceeds training size " + std::to_string(data.size()));
        }
        if (want_rf && trees < 1) throw UsageError("--trees must be >= 1");
        if (want_rf && (max_features < 0 || static_cast<std::size_t>(max_features) > dim)) {
            throw UsageError("--max-features must be in [0, " + std::to_string(dim) + "]");
        }
        if (!no_standardize && data.size() < 2) throw UsageError("standardization needs at least 2 training rows");

        TrainingSet ts;
        ts.classes = sorted_classes(data);
        std::optional<Standardizer> standardizer;
        if (!no_standardize) standardizer = fit_standardizer(data);
        for (const auto& fv : data) {
            ts.x.push_back(standardizer ? standardizer->transform(fv.values) : fv.values);
            ts.y.push_back(static_cast<std::size_t>(
                std::find(ts.classes.begin(), ts.classes.end(), fv.label) - ts.classes.begin()));
        }

        make_directory(out);
        nlohmann::json meta = {{"variant", to_string(variant)}, {"extraction", extraction_json(cfg)},
                               {"seed", seed}, {"training_rows", data.size()}};
        meta["standardizer"] = standardizer ? nlohmann::json{{"mean", standardizer->mean},
                                                             {"stddev", standardizer->stddev}}
                                            : nlohmann::json(nullptr);
        if (standardizer) {
            save_standardizer(*standardizer, fs::path(out) / "standardizer.json");
            out_stream << "wrote " << (fs::path(out) / "standardizer.json").string() << "\n";
        }

        std::optional<KnnModel> knn;
        std::optional<RfModel> rf;
        if (want_knn) knn = knn_fit(ts, k);
        if (want_rf) rf = rf_train(ts, RfConfig{trees, max_features}, derive_seed(seed, kStageForest));
        if (rf && rf->degenerate) out_stream << "warning: training data holds a single class\n";

        auto write = [&](const Model& m, const char* name) {
            const auto path = fs::path(out) / name;
            save_model(m, path, meta);
            out_stream << "wrote " << path.string() << "\n";
        };
        if (knn && (model == "knn" || model == "all")) write(*knn, "model_knn.json");
        if (rf && (model == "rf" || model == "all")) write(*rf, "model_rf.json");
        if (knn && rf && (model == "ensemble" || model == "all")) write(make_ensemble(*knn, *rf), "model_ensemble.json");
        return kExitOk;
    }
};

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateCmd {
    std::string dataset;
    std::string features;
    std::string out = "report";
    int k = 5;
    int trees = 100;
    int max_features = 0;
    double train_fraction = 0.9;
    bool no_stratify = false;
    bool no_standardize = false;
    std::string averaging = "weighted";
    std::uint64_t seed = 42;
    ExtractionFlags flags;

    void add_to(CLI::App* app) {
        auto* source = app->add_option_group("source");
        source->add_option("--dataset", dataset, "Dataset directory");
        source->add_option("--features", features, "Precomputed COMBINED feature CSV");
        source->require_option(1);
        app->add_option("--out", out, "Report output directory");
        app->add_option("--k", k, "KNN neighbor count (odd)");
        app->add_option("--trees", trees, "Random forest size");
        app->add_option("--max-features", max_features, "Features per split (0 = round(sqrt(dim)))");
        app->add_option("--train-fraction", train_fraction, "Training share of each class");
        app->add_flag("--no-stratify", no_stratify, "Split without per-class stratification");
        app->add_flag("--no-standardize", no_standardize, "Skip z-score standardization");
        app->add_option("--averaging", averaging, "Precision/recall/F1 averaging")
            ->check(CLI::IsMember({"weighted", "macro"}));
        app->add_option("--seed", seed, "Master seed");
        flags.add_to(app);
    }

    int run(std::ostream& out_stream, std::ostream& err) const {
        const auto started = std::chrono::steady_clock::now();
        GridConfig grid;
        grid.extraction = flags.config();
        grid.train_fraction = train_fraction;
        grid.stratified = !no_stratify;
        grid.standardize = !no_standardize;
        grid.k = k;
        grid.rf.trees = trees;
        grid.rf.max_features = max_features;
        grid.averaging = averaging == "macro" ? Averaging::Macro : Averaging::Weighted;
        grid.seed = seed;
        if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw UsageError("--train-fraction must be in (0, 1)");
        if (k < 1 || k % 2 == 0) throw UsageError("--k must be a positive odd number");
        if (trees < 1) throw UsageError("--trees must be >= 1");
        if (max_features < 0) throw UsageError("--max-features must be >= 0");

        std::vector<FeatureVector> combined;
        std::size_t failed_images = 0;
        if (!dataset.empty()) {
            require_directory_input(dataset, "--dataset");
            const auto batch = extract_manifest(open_dataset(dataset), FeatureVariant::Combined, grid.extraction);
            for (const auto& f : batch.failures) err << "error: " << f << "\n";
            failed_images = batch.failures.size();
            combined = batch.vectors;
        } else {
            if (!fs::is_regular_file(features)) throw UsageError("--features " + features + ": no such file");
            const FeatureSchema schema{FeatureVariant::Combined,
                                       feature_length(FeatureVariant::Combined, grid.extraction)};
            try {
                combined = load_features(features, schema);
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
        }
        const auto result = run_grid(combined, grid);
        nlohmann::json config = grid.to_json();
        config["source"] = dataset.empty() ? features : dataset;
        write_reports(result, config, out);

        out_stream << format_table(result);
        out_stream << "train " << result.train_size << " / test " << result.test_size << ", reports in " << out
                   << "\n";
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        err << "evaluate finished in " << seconds << " s\n";
        return result.any_failed() || failed_images ? kExitFailure : kExitOk;
    }
};

// ---------------------------------------------------------------------------
// predict
// ---------------------------------------------------------------------------

struct PredictCmd {
    std::string model;
    std::vector<std::string> inputs;

    void add_to(CLI::App* app) {
        app->add_option("--model", model, "Model JSON written by train")->required();
        app->add_option("inputs", inputs, "Image files or dataset directories")->required();
    }

    static std::vector<std::pair<std::string, fs::path>> expand(const std::string& input) {
        std::vector<std::pair<std::string, fs::path>> out;
        if (!fs::is_directory(input)) {
            out.emplace_back(input, input);
            return out;
        }
        if (fs::exists(fs::path(input) / kManifestFileName)) {
            const auto m = load_manifest(fs::path(input) / kManifestFileName);
            for (const auto& e : m.entries) out.emplace_back((fs::path(input) / e.path).string(), m.resolve(e));
            return out;
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(input)) {
            if (entry.is_regular_file() && entry.path().filename().string().front() != '.') {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) out.emplace_back(f.string(), f);
        return out;
    }

    int run(std::ostream& out_stream, std::ostream& err) const {
        ModelFile file;
        try {
            file = load_model_file(model);
        } catch (const Error& e) {
            err << "error: cannot load model: " << e.what() << "\n";
            return kExitFailure;
        }
        const auto& meta = file.metadata;
        if (!meta.is_object() || !meta.contains("variant") || !meta.contains("extraction")) {
            err << "error: model file carries no pipeline metadata\n";
            return kExitFailure;
        }
        const auto variant = parse_variant(meta.at("variant").get<std::string>());
        const auto cfg = extraction_from_json(meta.at("extraction"));
        if (!variant) {
            err << "error: unknown variant in model metadata\n";
            return kExitFailure;
        }
        std::optional<Standardizer> standardizer;
        if (meta.contains("standardizer") && !meta["standardizer"].is_null()) {
            standardizer = Standardizer{meta["standardizer"].at("mean").get<std::vector<double>>(),
                                        meta["standardizer"].at("stddev").get<std::vector<double>>()};
        }
        const std::size_t expected = model_dim(file.model);
        const std::size_t produced = feature_length(*variant, cfg);
        if (expected != produced || (standardizer && standardizer->mean.size() != expected)) {
            err << "error: model expects " << expected << " features but " << to_string(*variant)
                << " extraction produces " << produced << "\n";
            return kExitFailure;
        }

        const auto& classes = model_classes(file.model);
        out_stream << "path,label";
        for (const auto& c : classes) out_stream << ",score_" << c;
        out_stream << "\n";

        bool any_failed = false;
        for (const auto& input : inputs) {
            std::vector<std::pair<std::string, fs::path>> items;
            try {
                items = expand(input);
            } catch (const Error& e) {
                out_stream << input << ",ERROR," << e.what() << "\n";
                any_failed = true;
                continue;
            }
            for (const auto& [shown, path] : items) {
                try {
                    auto fv = extract(load_image(path), *variant, cfg);
                    const auto x = standardizer ? standardizer->transform(fv.values) : fv.values;
                    const auto p = predict(file.model, x);
                    out_stream << shown << "," << classes[p.label];
                    for (double s : p.scores) out_stream << "," << s;
                    out_stream << "\n";
                } catch (const Error& e) {
                    out_stream << shown << ",ERROR," << e.what() << "\n";
                    any_failed = true;
                }
            }
        }
        return any_failed ? kExitFailure : kExitOk;
    }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Texture-feature 2D object classification (GLCM + LBP, KNN / RF / voting ensemble)", "texclass"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    GenerateCmd generate;
    ExtractCmd extract_cmd;
    TrainCmd train;
    EvaluateCmd evaluate;
    PredictCmd predict_cmd;

    auto setup = [](CLI::App* sub) {
        sub->option_defaults()->always_capture_default();
        sub->set_config("--config", "", "Read key=value options from a file; flags override it");
        return sub;
    };
    generate.add_to(setup(app.add_subcommand("generate", "Generate the synthetic texture dataset with rotations")));
    extract_cmd.add_to(setup(app.add_subcommand("extract", "Extract feature CSVs from a dataset")));
    train.add_to(setup(app.add_subcommand("train", "Train classifiers from a feature CSV")));
    evaluate.add_to(setup(app.add_subcommand("evaluate", "Run the 7-cell evaluation grid")));
    predict_cmd.add_to(setup(app.add_subcommand("predict", "Classify images with a trained model")));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "generate") return generate.run(out);
        if (name == "extract") return extract_cmd.run(out, err);
        if (name == "train") return train.run(out);
        if (name == "evaluate") return evaluate.run(out, err);
        return predict_cmd.run(out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"texclass"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace texclass
