#include "texclass/classify.hpp"

#include "texclass/error.hpp"
#include "texclass/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

namespace texclass {

double gini(std::span<const std::size_t> counts) {
    const std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    if (n == 0) return 0.0;
    double sum_sq = 0.0;
    for (auto c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(n);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

const std::vector<double>& DecisionTree::leaf_for(std::span<const double> v) const {
    std::size_t node = 0;
    while (!nodes[node].is_leaf()) {
        const auto& n = nodes[node];
        node = static_cast<std::size_t>(v[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
    }
    return nodes[node].freq;
}

namespace {

constexpr double kImpurityEpsilon = 1e-12;

// Weighted Gini from left/right class counts, written as
// (n - sum cL^2 / nL - sum cR^2 / nR) / n.
double weighted_gini(std::span<const std::size_t> left, std::size_t n_left, std::span<const std::size_t> right,
                     std::size_t n_right) {
    double sl = 0.0;
    double sr = 0.0;
    for (std::size_t c = 0; c < left.size(); ++c) {
        sl += static_cast<double>(left[c]) * static_cast<double>(left[c]);
        sr += static_cast<double>(right[c]) * static_cast<double>(right[c]);
    }
    const auto n = static_cast<double>(n_left + n_right);
    return (n - sl / static_cast<double>(n_left) - sr / static_cast<double>(n_right)) / n;
}

}  // namespace

std::optional<SplitChoice> best_split(const TrainingSet& data, std::span<const std::size_t> samples,
                                      std::span<const int> features) {
    const std::size_t n_classes = data.classes.size();
    std::vector<int> order(features.begin(), features.end());
    std::sort(order.begin(), order.end());

    std::vector<std::size_t> total(n_classes, 0);
    for (auto s : samples) ++total[data.y[s]];

    std::optional<SplitChoice> best;
    std::vector<std::size_t> sorted(samples.begin(), samples.end());
    std::vector<std::size_t> left(n_classes);
    std::vector<std::size_t> right(n_classes);
    for (int f : order) {
        const auto fi = static_cast<std::size_t>(f);
        std::stable_sort(sorted.begin(), sorted.end(),
                         [&](std::size_t a, std::size_t b) { return data.x[a][fi] < data.x[b][fi]; });
        std::fill(left.begin(), left.end(), 0);
        right = total;
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            const std::size_t cls = data.y[sorted[i]];
            ++left[cls];
            --right[cls];
            const double lo = data.x[sorted[i]][fi];
            const double hi = data.x[sorted[i + 1]][fi];
            if (!(lo < hi)) continue;
            double threshold = lo + (hi - lo) / 2.0;
            if (threshold >= hi) threshold = lo;  // adjacent doubles
            const double impurity = weighted_gini(left, i + 1, right, sorted.size() - i - 1);
            if (!best || impurity < best->impurity - kImpurityEpsilon) best = SplitChoice{f, threshold, impurity};
        }
    }
    return best;
}

namespace {

class TreeBuilder {
public:
    TreeBuilder(const TrainingSet& data, int max_features, Rng& rng)
        : data_(data), max_features_(max_features), rng_(rng), pool_(data.dim()) {
        std::iota(pool_.begin(), pool_.end(), 0);
    }

    DecisionTree build(std::vector<std::size_t> samples) {
        DecisionTree tree;
        grow(tree, std::move(samples));
        return tree;
    }

private:
    int grow(DecisionTree& tree, std::vector<std::size_t> samples) {
        const int id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        std::vector<std::size_t> counts(data_.classes.size(), 0);
        for (auto s : samples) ++counts[data_.y[s]];
        const double impurity = gini(counts);

        std::optional<SplitChoice> split;
        if (samples.size() >= 2 && impurity > 0.0) {
            split = best_split(data_, samples, draw_features());
            if (split && !(split->impurity < impurity - kImpurityEpsilon)) split.reset();
        }
        if (!split) {
            auto& leaf = tree.nodes[static_cast<std::size_t>(id)];
            leaf.freq.resize(counts.size());
            for (std::size_t c = 0; c < counts.size(); ++c) {
                leaf.freq[c] = static_cast<double>(counts[c]) / static_cast<double>(samples.size());
            }
            return id;
        }

        const auto fi = static_cast<std::size_t>(split->feature);
        std::vector<std::size_t> lower;
        std::vector<std::size_t> upper;
        for (auto s : samples) (data_.x[s][fi] <= split->threshold ? lower : upper).push_back(s);
        samples.clear();
        samples.shrink_to_fit();

        const int left = grow(tree, std::move(lower));
        const int right = grow(tree, std::move(upper));
        auto& node = tree.nodes[static_cast<std::size_t>(id)];
        node.feature = split->feature;
        node.threshold = split->threshold;
        node.left = left;
        node.right = right;
        return id;
    }

    // Partial Fisher-Yates over the persistent pool; only the prefix is used.
    std::vector<int> draw_features() {
        const auto m = static_cast<std::size_t>(max_features_);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng_.index(pool_.size() - i));
            std::swap(pool_[i], pool_[j]);
        }
        return {pool_.begin(), pool_.begin() + static_cast<std::ptrdiff_t>(m)};
    }

    const TrainingSet& data_;
    int max_features_;
    Rng& rng_;
    std::vector<int> pool_;
};

DecisionTree train_tree(const TrainingSet& data, const RfModel& shape, std::size_t t) {
    Rng rng(derive_seed(shape.seed, t));
    const std::size_t n = data.size();
    std::vector<std::size_t> samples(n);
    if (shape.bootstrap) {
        for (auto& s : samples) s = static_cast<std::size_t>(rng.index(n));
    } else {
        std::iota(samples.begin(), samples.end(), 0);
    }
    return TreeBuilder(data, shape.max_features, rng).build(std::move(samples));
}

}  // namespace

RfModel rf_train(const TrainingSet& data, const RfConfig& cfg, std::uint64_t seed) {
    if (data.size() < 2) {
        throw Error(ErrorCode::InsufficientData,
                    "random forest needs at least 2 samples, got " + std::to_string(data.size()));
    }
    data.validate();
    if (cfg.trees < 1) throw Error(ErrorCode::InvalidArgument, "tree count must be >= 1");
    const auto dim = static_cast<int>(data.dim());
    int max_features = cfg.max_features;
    if (max_features == 0) max_features = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
    max_features = std::max(max_features, 1);
    if (max_features > dim) {
        throw Error(ErrorCode::InvalidArgument, "max_features=" + std::to_string(cfg.max_features) +
                                                    " exceeds feature dimension " + std::to_string(dim));
    }

    RfModel model;
    model.classes = data.classes;
    model.dim = data.dim();
    model.max_features = max_features;
    model.bootstrap = cfg.bootstrap;
    model.seed = seed;
    model.trees.resize(static_cast<std::size_t>(cfg.trees));

    const auto first = data.y.front();
    model.degenerate = std::all_of(data.y.begin(), data.y.end(), [first](std::size_t c) { return c == first; });

    unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.trees));
    if (workers <= 1) {
        for (std::size_t t = 0; t < model.trees.size(); ++t) model.trees[t] = train_tree(data, model, t);
        return model;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < model.trees.size(); t += workers) {
                    model.trees[t] = train_tree(data, model, t);
                }
            });
        }
    }
    return model;
}

Prediction rf_predict(const RfModel& m, std::span<const double> v) {
    if (v.size() != m.dim) {
        throw Error(ErrorCode::DimensionMismatch, "random forest expects " + std::to_string(m.dim) +
                                                      " features, got " + std::to_string(v.size()));
    }
    Prediction out;
    out.scores.assign(m.classes.size(), 0.0);
    for (const auto& tree : m.trees) {
        const auto& freq = tree.leaf_for(v);
        for (std::size_t c = 0; c < freq.size(); ++c) out.scores[c] += freq[c];
    }
    for (auto& s : out.scores) s /= static_cast<double>(m.trees.size());
    out.label = argmax_lowest(out.scores);
    return out;
}

}  // namespace texclass
