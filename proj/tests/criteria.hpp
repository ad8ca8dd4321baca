#pragma once

#include <functional>
#include <string>
#include <vector>

namespace texclass::criteria {

struct Outcome {
    bool ok = true;
    std::string detail;

    /// Records a failure message; keeps only the first few.
    void fail(const std::string& msg);
};

struct Criterion {
    std::string name;
    std::function<Outcome()> run;
};

Outcome glcm_oracle_equivalence();
Outcome glcm_hand_fixtures();
Outcome glcm_feature_ranges();
Outcome lbp_exhaustives();
Outcome knn_oracle_equivalence();
Outcome rf_determinism_and_sanity();
Outcome metric_identities();
Outcome end_to_end_regression();
Outcome serialization_round_trips();

/// All acceptance criteria in reporting order.
const std::vector<Criterion>& all();

}  // namespace texclass::criteria
