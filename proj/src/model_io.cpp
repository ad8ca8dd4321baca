#include "texclass/classify.hpp"

#include "texclass/error.hpp"

#include <fstream>
#include <string>

namespace texclass {

EnsembleModel make_ensemble(KnnModel knn, RfModel rf) {
    if (knn.train.classes != rf.classes) {
        throw Error(ErrorCode::InvalidArgument, "ensemble members were trained on different class lists");
    }
    if (knn.train.dim() != rf.dim) {
        throw Error(ErrorCode::DimensionMismatch, "ensemble members have different feature dimensions");
    }
    return EnsembleModel{std::move(knn), std::move(rf)};
}

Prediction ensemble_predict(const EnsembleModel& m, std::span<const double> v) {
    const auto a = knn_predict(m.knn, v);
    const auto b = rf_predict(m.rf, v);
    Prediction out;
    out.scores.resize(a.scores.size());
    for (std::size_t c = 0; c < a.scores.size(); ++c) out.scores[c] = (a.scores[c] + b.scores[c]) / 2.0;
    out.label = argmax_lowest(out.scores);
    return out;
}

Prediction predict(const Model& m, std::span<const double> v) {
    return std::visit(
        [&](const auto& model) -> Prediction {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, KnnModel>) return knn_predict(model, v);
            else if constexpr (std::is_same_v<T, RfModel>) return rf_predict(model, v);
            else return ensemble_predict(model, v);
        },
        m);
}

const std::vector<std::string>& model_classes(const Model& m) {
    if (const auto* k = std::get_if<KnnModel>(&m)) return k->train.classes;
    if (const auto* r = std::get_if<RfModel>(&m)) return r->classes;
    return std::get<EnsembleModel>(m).rf.classes;
}

std::size_t model_dim(const Model& m) {
    if (const auto* k = std::get_if<KnnModel>(&m)) return k->train.dim();
    if (const auto* r = std::get_if<RfModel>(&m)) return r->dim;
    return std::get<EnsembleModel>(m).rf.dim;
}

std::string_view model_kind(const Model& m) {
    switch (m.index()) {
        case 0: return "knn";
        case 1: return "rf";
        default: return "ensemble";
    }
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json knn_body(const KnnModel& m) {
    return {{"k", m.k}, {"classes", m.train.classes}, {"train_x", m.train.x}, {"train_y", m.train.y}};
}

json rf_body(const RfModel& m) {
    json trees = json::array();
    for (const auto& tree : m.trees) {
        json nodes = json::array();
        for (const auto& n : tree.nodes) {
            if (n.is_leaf()) {
                nodes.push_back({{"leaf", n.freq}});
            } else {
                nodes.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left},
                                 {"right", n.right}});
            }
        }
        trees.push_back(std::move(nodes));
    }
    return {{"classes", m.classes}, {"dim", m.dim},           {"max_features", m.max_features},
            {"bootstrap", m.bootstrap}, {"seed", m.seed}, {"degenerate", m.degenerate},
            {"trees", std::move(trees)}};
}

KnnModel knn_from(const json& j) {
    TrainingSet ts;
    ts.classes = j.at("classes").get<std::vector<std::string>>();
    ts.x = j.at("train_x").get<std::vector<std::vector<double>>>();
    ts.y = j.at("train_y").get<std::vector<std::size_t>>();
    return knn_fit(std::move(ts), j.at("k").get<int>());
}

RfModel rf_from(const json& j) {
    RfModel m;
    m.classes = j.at("classes").get<std::vector<std::string>>();
    m.dim = j.at("dim").get<std::size_t>();
    m.max_features = j.at("max_features").get<int>();
    m.bootstrap = j.at("bootstrap").get<bool>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.degenerate = j.at("degenerate").get<bool>();
    for (const auto& jt : j.at("trees")) {
        DecisionTree tree;
        for (const auto& jn : jt) {
            TreeNode n;
            if (jn.contains("leaf")) {
                n.freq = jn.at("leaf").get<std::vector<double>>();
                if (n.freq.size() != m.classes.size()) {
                    throw Error(ErrorCode::SchemaMismatch, "leaf frequency length differs from class count");
                }
            } else {
                n.feature = jn.at("feature").get<int>();
                n.threshold = jn.at("threshold").get<double>();
                n.left = jn.at("left").get<int>();
                n.right = jn.at("right").get<int>();
            }
            tree.nodes.push_back(std::move(n));
        }
        if (tree.nodes.empty()) throw Error(ErrorCode::SchemaMismatch, "tree without nodes");
        const auto count = static_cast<int>(tree.nodes.size());
        for (const auto& n : tree.nodes) {
            if (n.is_leaf()) continue;
            if (n.left <= 0 || n.left >= count || n.right <= 0 || n.right >= count ||
                n.feature >= static_cast<int>(m.dim)) {
                throw Error(ErrorCode::SchemaMismatch, "tree node references out of range");
            }
        }
        m.trees.push_back(std::move(tree));
    }
    if (m.trees.empty()) throw Error(ErrorCode::SchemaMismatch, "forest without trees");
    return m;
}

}  // namespace

nlohmann::json model_to_json(const Model& m, const nlohmann::json& metadata) {
    json doc = {{"format", "texclass-model"}, {"version", kModelFormatVersion}, {"type", model_kind(m)}};
    if (const auto* k = std::get_if<KnnModel>(&m)) {
        doc["knn"] = knn_body(*k);
    } else if (const auto* r = std::get_if<RfModel>(&m)) {
        doc["rf"] = rf_body(*r);
    } else {
        const auto& e = std::get<EnsembleModel>(m);
        doc["knn"] = knn_body(e.knn);
        doc["rf"] = rf_body(e.rf);
    }
    doc["metadata"] = metadata;
    return doc;
}

Model model_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || doc.value("format", "") != "texclass-model") {
        throw Error(ErrorCode::VersionMismatch, "not a texclass model document");
    }
    if (!doc.contains("version") || !doc["version"].is_number_integer() ||
        doc["version"].get<int>() != kModelFormatVersion) {
        throw Error(ErrorCode::VersionMismatch, "unsupported model format version");
    }
    try {
        const auto type = doc.at("type").get<std::string>();
        if (type == "knn") return knn_from(doc.at("knn"));
        if (type == "rf") return rf_from(doc.at("rf"));
        if (type == "ensemble") return make_ensemble(knn_from(doc.at("knn")), rf_from(doc.at("rf")));
        throw Error(ErrorCode::SchemaMismatch, "unknown model type '" + type + "'");
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, std::string("malformed model document: ") + e.what());
    }
}

void save_model(const Model& m, const std::filesystem::path& path, const nlohmann::json& metadata) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    out << model_to_json(m, metadata).dump() << '\n';
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

ModelFile load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, path.string() + ": " + e.what());
    }
    auto model = model_from_json(doc);
    return {std::move(model), doc.value("metadata", nlohmann::json())};
}

Model load_model(const std::filesystem::path& path) { return load_model_file(path).model; }

}  // namespace texclass
