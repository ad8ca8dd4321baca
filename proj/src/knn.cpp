#include "texclass/classify.hpp"

#include "texclass/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace texclass {

void TrainingSet::validate() const {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "feature rows and labels differ in count");
    if (x.empty()) throw Error(ErrorCode::InsufficientData, "training set is empty");
    if (classes.empty()) throw Error(ErrorCode::NoClasses, "training set has no class list");
    const std::size_t d = x.front().size();
    if (d == 0) throw Error(ErrorCode::InsufficientData, "training vectors have no features");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].size() != d) throw Error(ErrorCode::MixedLengths, "training vectors have different lengths");
        if (y[i] >= classes.size()) {
            throw Error(ErrorCode::UnknownLabel, "label index " + std::to_string(y[i]) + " outside class list");
        }
    }
}

double euclidean(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "vectors of length " + std::to_string(p.size()) + " and " + std::to_string(q.size()));
    }
    double sum = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        const double d = p[n] - q[n];
        sum += d * d;
    }
    return std::sqrt(sum);
}

std::size_t argmax_lowest(std::span<const double> scores) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < scores.size(); ++c) {
        if (scores[c] > scores[best]) best = c;
    }
    return best;
}

KnnModel knn_fit(TrainingSet train, int k) {
    train.validate();
    if (k < 1 || k % 2 == 0) {
        throw Error(ErrorCode::InvalidArgument, "k must be a positive odd number, got " + std::to_string(k));
    }
    if (static_cast<std::size_t>(k) > train.size()) {
        throw Error(ErrorCode::InvalidArgument, "k=" + std::to_string(k) + " exceeds training size " +
                                                    std::to_string(train.size()));
    }
    return KnnModel{k, std::move(train)};
}

Prediction knn_predict(const KnnModel& m, std::span<const double> v) {
    const auto& train = m.train;
    if (v.size() != train.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "KNN expects " + std::to_string(train.dim()) +
                                                      " features, got " + std::to_string(v.size()));
    }
    struct Candidate {
        double distance;
        std::size_t index;
    };
    std::vector<Candidate> candidates(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) candidates[i] = {euclidean(train.x[i], v), i};

    const auto k = static_cast<std::size_t>(m.k);
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k), candidates.end(),
                      [](const Candidate& a, const Candidate& b) {
                          return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
                      });

    std::vector<std::size_t> votes(train.classes.size(), 0);
    for (std::size_t n = 0; n < k; ++n) ++votes[train.y[candidates[n].index]];
    const std::size_t top = *std::max_element(votes.begin(), votes.end());

    Prediction out;
    out.scores.resize(votes.size());
    for (std::size_t c = 0; c < votes.size(); ++c) out.scores[c] = static_cast<double>(votes[c]) / static_cast<double>(k);
    // Neighbors are in ascending distance, so the first tied class met wins.
    for (std::size_t n = 0; n < k; ++n) {
        const std::size_t cls = train.y[candidates[n].index];
        if (votes[cls] == top) {
            out.label = cls;
            break;
        }
    }
    return out;
}

}  // namespace texclass
