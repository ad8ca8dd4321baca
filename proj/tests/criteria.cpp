#include "criteria.hpp"

#include "oracles.hpp"
#include "test_support.hpp"
#include "texclass/classify.hpp"
#include "texclass/cli.hpp"
#include "texclass/dataset.hpp"
#include "texclass/eval.hpp"
#include "texclass/features.hpp"
#include "texclass/glcm.hpp"
#include "texclass/lbp.hpp"

#include <json.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace texclass::criteria {

void Outcome::fail(const std::string& msg) {
    if (ok || detail.size() < 400) detail += (detail.empty() ? "" : "; ") + msg;
    ok = false;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_runtime(Outcome& out, Clock::time_point start, double budget) {
    const double s = seconds_since(start);
    std::ostringstream os;
    os << "runtime " << s << " s (budget " << budget << " s)";
    if (s >= budget) out.fail(os.str());
    else if (out.ok) out.detail = os.str();
}

QuantizedImage random_quantized(Rng& rng, int w, int h, int levels) {
    return quantize(texclass::testing::random_image(rng, w, h), levels);
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

std::string str(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Outcome glcm_oracle_equivalence() {
    Outcome out;
    const auto start = Clock::now();
    Rng rng(20240101);
    const std::array<int, 3> levels = {2, 8, 16};
    for (int t = 0; t < 100; ++t) {
        const int w = 2 + static_cast<int>(rng.index(15));
        const int h = 2 + static_cast<int>(rng.index(15));
        const int n = levels[t % 3];
        const auto img = random_quantized(rng, w, h, n);
        const int d = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(std::min(w, h) - 1)));
        for (auto angle : kGlcmAngles) {
            const auto [dx, dy] = oracle::offset(d, angle);
            const auto expected = oracle::glcm(img, dx, dy);
            const auto got = compute_glcm(img, GlcmOffset{d, angle});
            if (got.p != expected)
                out.fail("image " + std::to_string(t) + " angle " + std::to_string(static_cast<int>(angle)));
        }
    }
    check_runtime(out, start, 5.0);
    return out;
}

Outcome glcm_hand_fixtures() {
    Outcome out;
    constexpr double tol = 1e-12;
    struct Fixture {
        std::vector<std::uint8_t> data;
        std::vector<double> p;
        double mu, sigma2;
        std::array<double, 5> features;  // contrast, correlation, energy, homogeneity, entropy
    };
    const std::vector<Fixture> fixtures = {
        {{0, 0, 1, 1}, {0.5, 0, 0, 0.5}, 0.5, 0.25, {0.0, 1.0, 0.5, 1.0, std::log(2.0)}},
        {{0, 1, 1, 0}, {0, 0.5, 0.5, 0}, 0.5, 0.25, {1.0, -1.0, 0.5, 0.5, std::log(2.0)}},
        {{1, 1, 1, 1}, {0, 0, 0, 1}, 1.0, 0.0, {0.0, 1.0, 1.0, 1.0, 0.0}},
    };
    for (std::size_t f = 0; f < fixtures.size(); ++f) {
        const auto& fx = fixtures[f];
        const std::string tag = "fixture " + std::to_string(f) + ": ";
        const QuantizedImage img(2, 2, 2, fx.data);
        const auto m = compute_glcm(img, GlcmOffset{1, GlcmAngle::Deg0});
        for (std::size_t k = 0; k < 4; ++k)
            if (!near(m.p[k], fx.p[k], tol)) out.fail(tag + "P[" + std::to_string(k) + "]=" + str(m.p[k]));
        if (!near(m.mu, fx.mu, tol)) out.fail(tag + "mu=" + str(m.mu));
        if (!near(m.sigma2, fx.sigma2, tol)) out.fail(tag + "sigma2=" + str(m.sigma2));
        const auto got = glcm_features(m).as_array();
        for (std::size_t k = 0; k < 5; ++k)
            if (!near(got[k], fx.features[k], tol))
                out.fail(tag + "feature " + std::to_string(k) + "=" + str(got[k]));
    }
    // The all-zero constant image puts its mass at P_00 with mu = 0.
    const auto zero = compute_glcm(QuantizedImage(2, 2, 2, {0, 0, 0, 0}), GlcmOffset{1, GlcmAngle::Deg0});
    if (zero.p != std::vector<double>{1, 0, 0, 0} || zero.mu != 0.0 || zero.sigma2 != 0.0)
        out.fail("constant image matrix");
    // Uniform P over N^2 cells.
    for (int n : {2, 4, 8}) {
        const auto m = glcm_from_counts(n, std::vector<std::uint64_t>(static_cast<std::size_t>(n) * n, 3));
        if (!near(energy(m), 1.0 / (n * n), tol)) out.fail("uniform energy N=" + std::to_string(n));
        if (!near(glcm_entropy(m), 2.0 * std::log(n), tol)) out.fail("uniform entropy N=" + std::to_string(n));
    }
    return out;
}

Outcome glcm_feature_ranges() {
    Outcome out;
    const auto start = Clock::now();
    constexpr double eps = 1e-9;
    Rng rng(777);
    const std::array<int, 4> levels = {2, 4, 8, 16};
    for (int t = 0; t < 1000; ++t) {
        const int w = 2 + static_cast<int>(rng.index(31));
        const int h = 2 + static_cast<int>(rng.index(31));
        const int n = levels[rng.index(levels.size())];
        // Mix of full-range noise and low-entropy images so the extremes get exercised.
        const int span = t % 4 == 0 ? 1 + static_cast<int>(rng.index(3)) : 255;
        auto gray = texclass::testing::random_image(rng, w, h, span);
        const auto img = quantize(gray, n);
        const int d = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(std::min({w, h, 4}) - 1)));
        for (auto angle : kGlcmAngles) {
            const auto m = compute_glcm(img, GlcmOffset{d, angle});
            double sum = 0.0;
            for (double v : m.p) sum += v;
            const auto f = glcm_features(m);
            const std::string tag = "image " + std::to_string(t) + ": ";
            if (!near(sum, 1.0, eps)) out.fail(tag + "sum P=" + str(sum));
            if (f.contrast < 0.0) out.fail(tag + "contrast");
            if (!(f.energy > 0.0 && f.energy <= 1.0 + eps)) out.fail(tag + "energy=" + str(f.energy));
            if (!(f.homogeneity > 0.0 && f.homogeneity <= 1.0 + eps))
                out.fail(tag + "homogeneity=" + str(f.homogeneity));
            if (!(f.entropy >= -eps && f.entropy <= 2.0 * std::log(n) + eps))
                out.fail(tag + "entropy=" + str(f.entropy));
            if (!(f.correlation >= -1.0 - eps && f.correlation <= 1.0 + eps))
                out.fail(tag + "correlation=" + str(f.correlation));
        }
    }
    check_runtime(out, start, 30.0);
    return out;
}

Outcome lbp_exhaustives() {
    Outcome out;
    using N = std::array<std::uint8_t, 8>;
    // s(0) = 1 fixtures.
    if (lbp_code(5, N{5, 5, 5, 5, 5, 5, 5, 5}) != 255) out.fail("all equal != 255");
    if (lbp_code(5, N{4, 4, 4, 4, 4, 4, 4, 4}) != 0) out.fail("all below != 0");
    if (lbp_code(5, N{6, 4, 4, 4, 4, 4, 4, 6}) != 129) out.fail("ring fixture != 129");
    for (int i = 0; i < 8; ++i) {
        N ring{};
        ring.fill(4);
        ring[i] = 5;  // equal to center
        if (lbp_code(5, ring) != (1 << i)) out.fail("single equal neighbor bit " + std::to_string(i));
    }
    if (ri_map(0) != 0 || ri_map(255) != 255 || ri_map(129) != 3) out.fail("ri_map fixtures");

    std::set<int> classes;
    for (int c = 0; c < 256; ++c) {
        const auto code = static_cast<std::uint8_t>(c);
        const int r = ri_map(code);
        if (r != oracle::ri_map(c)) out.fail("ri_map(" + std::to_string(c) + ") differs from oracle");
        if (ri_map(static_cast<std::uint8_t>(r)) != r) out.fail("ri_map not idempotent at " + std::to_string(c));
        classes.insert(r);
        if (ri_canonical_codes()[ri_bin(code)] != r) out.fail("ri_bin(" + std::to_string(c) + ")");
    }
    if (classes.size() != 36) out.fail("class count " + std::to_string(classes.size()));
    if (!std::equal(classes.begin(), classes.end(), ri_canonical_codes().begin())) out.fail("canonical order");

    // 3x3 fixture.
    const auto h3 = lbp_histogram(GrayImage(3, 3, {4, 4, 4, 6, 5, 6, 4, 4, 4}), LbpConfig{LbpMode::Raw});
    // Ring E=(2,1)=6, NE=(2,0)=4, N=(1,0)=4, NW=(0,0)=4, W=(0,1)=6, ... gives bits 0 and 4.
    if (h3.bins.size() != 256 || h3.bins[17] != 1.0) out.fail("3x3 histogram");
    const auto h129 = lbp_histogram(GrayImage(3, 3, {4, 4, 4, 4, 5, 6, 4, 4, 6}), LbpConfig{LbpMode::Raw});
    if (h129.bins[129] != 1.0) out.fail("3x3 histogram bin 129");

    // Exact invariance under 90 degree rotation.
    Rng rng(90);
    for (int t = 0; t < 100; ++t) {
        const int n = 3 + static_cast<int>(rng.index(30));
        const auto img = texclass::testing::random_image(rng, n, n, t % 2 == 0 ? 255 : 3);
        const auto base = lbp_histogram(img).bins;
        for (int q = 1; q <= 3; ++q) {
            const auto rot = lbp_histogram(rotate(img, 90.0 * q)).bins;
            if (rot != base) out.fail("image " + std::to_string(t) + " rotated " + std::to_string(90 * q));
        }
    }
    return out;
}

Outcome knn_oracle_equivalence() {
    Outcome out;
    Rng rng(4242);
    const std::array<int, 4> ks = {1, 3, 5, 7};
    for (int t = 0; t < 200; ++t) {
        const std::size_t dim = 2 + rng.index(40);
        TrainingSet train;
        train.classes = {"a", "b", "c"};
        // Coarse integer grid on some problems so distance ties actually happen.
        const bool coarse = t % 2 == 1;
        auto draw = [&] { return coarse ? static_cast<double>(rng.index(3)) : rng.normal(); };
        for (int i = 0; i < 50; ++i) {
            std::vector<double> v(dim);
            for (auto& x : v) x = draw();
            train.x.push_back(std::move(v));
            train.y.push_back(rng.index(3));
        }
        const int k = ks[t % 4];
        const auto model = knn_fit(train, k);
        for (int q = 0; q < 5; ++q) {
            std::vector<double> v(dim);
            for (auto& x : v) x = draw();
            if (knn_predict(model, v) != oracle::knn(train, k, v))
                out.fail("problem " + std::to_string(t) + " query " + std::to_string(q));
        }
        if (knn_predict(model, train.x[7]) != oracle::knn(train, k, train.x[7]))
            out.fail("problem " + std::to_string(t) + " training query");
    }
    return out;
}

Outcome rf_determinism_and_sanity() {
    Outcome out;
    Rng rng(31337);

    // Determinism.
    TrainingSet data;
    data.classes = {"x", "y", "z"};
    for (int i = 0; i < 90; ++i) {
        const std::size_t c = static_cast<std::size_t>(i % 3);
        std::vector<double> v(6);
        for (auto& x : v) x = rng.normal() + static_cast<double>(c);
        data.x.push_back(std::move(v));
        data.y.push_back(c);
    }
    RfConfig cfg;
    cfg.trees = 25;
    const auto a = rf_train(data, cfg, 99);
    const auto b = rf_train(data, cfg, 99);
    cfg.threads = 1;
    const auto c = rf_train(data, cfg, 99);
    if (!(a == b)) out.fail("repeated training differs");
    if (!(a == c)) out.fail("single-threaded training differs");
    if (model_to_json(a).dump() != model_to_json(c).dump()) out.fail("serialized forests differ");

    // A single unpruned tree shatters distinct points.
    for (int t = 0; t < 20; ++t) {
        TrainingSet s;
        s.classes = {"a", "b", "c"};
        const std::size_t dim = 1 + rng.index(5);
        for (int i = 0; i < 60; ++i) {
            std::vector<double> v(dim);
            for (auto& x : v) x = rng.normal();
            s.x.push_back(std::move(v));
            s.y.push_back(rng.index(3));
        }
        RfConfig one;
        one.trees = 1;
        one.max_features = 1;
        one.bootstrap = false;
        const auto m = rf_train(s, one, static_cast<std::uint64_t>(t));
        for (std::size_t i = 0; i < s.size(); ++i)
            if (rf_predict(m, s.x[i]).label != s.y[i]) {
                out.fail("tree " + std::to_string(t) + " misclassifies sample " + std::to_string(i));
                break;
            }
    }
    // Linearly separable 1-D data: even a bootstrapped tree gets every point.
    {
        TrainingSet s;
        s.classes = {"lo", "hi"};
        for (int i = 0; i < 40; ++i) {
            s.x.push_back({static_cast<double>(i)});
            s.y.push_back(i < 20 ? 0 : 1);
        }
        RfConfig one;
        one.trees = 1;
        one.max_features = 1;
        const auto m = rf_train(s, one, 5);
        for (std::size_t i = 0; i < s.size(); ++i)
            if (rf_predict(m, s.x[i]).label != s.y[i]) out.fail("1-D separable sample " + std::to_string(i));
    }

    // Gini split against exhaustive enumeration.
    for (int t = 0; t < 500; ++t) {
        TrainingSet s;
        s.classes = {"a", "b", "c"};
        const std::size_t n = 2 + rng.index(7);
        const std::size_t dim = 1 + rng.index(4);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> v(dim);
            for (auto& x : v) x = static_cast<double>(rng.index(5));
            s.x.push_back(std::move(v));
            s.y.push_back(rng.index(3));
        }
        std::vector<std::size_t> samples;
        for (std::size_t i = 0; i < n; ++i) samples.push_back(rng.index(n));
        std::vector<int> feats;
        for (std::size_t f = 0; f < dim; ++f)
            if (rng.index(2) == 0 || f == 0) feats.push_back(static_cast<int>(f));
        const double expected = oracle::best_gini(s, samples, feats);
        const auto got = best_split(s, samples, feats);
        if (expected < 0.0) {
            if (got) out.fail("node " + std::to_string(t) + ": split where none exists");
            continue;
        }
        if (!got) {
            out.fail("node " + std::to_string(t) + ": missing split");
            continue;
        }
        if (!near(got->impurity, expected, 1e-12))
            out.fail("node " + std::to_string(t) + ": impurity " + str(got->impurity) + " vs " + str(expected));
        // The reported split must achieve the reported impurity.
        std::vector<std::size_t> l, r;
        for (auto i : samples) (s.x[i][got->feature] <= got->threshold ? l : r).push_back(i);
        const double actual =
            (l.size() * oracle::gini_of(l, s) + r.size() * oracle::gini_of(r, s)) / samples.size();
        if (l.empty() || r.empty() || !near(actual, expected, 1e-12))
            out.fail("node " + std::to_string(t) + ": chosen split does not realize the minimum");
    }

    // Single-class data.
    {
        TrainingSet s;
        s.classes = {"only"};
        for (int i = 0; i < 10; ++i) {
            s.x.push_back({rng.normal(), rng.normal()});
            s.y.push_back(0);
        }
        RfConfig small;
        small.trees = 5;
        const auto m = rf_train(s, small, 1);
        const auto p = rf_predict(m, std::vector<double>{0.3, -2.0});
        if (p.label != 0 || p.scores != std::vector<double>{1.0}) out.fail("single-class forest");
    }
    return out;
}

Outcome metric_identities() {
    Outcome out;
    ConfusionMatrix fx{{"A", "B"}, {5, 0, 1, 4}};
    const auto m = metrics(fx);
    if (round2(m.accuracy) != 90.00 || round2(m.precision) != 91.67 || round2(m.recall) != 90.00 ||
        round2(m.f1) != 89.90)
        out.fail("fixture gives " + str(m.accuracy) + "/" + str(m.precision) + "/" + str(m.recall) + "/" +
                 str(m.f1));

    Rng rng(1000);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t c = 2 + rng.index(6);
        ConfusionMatrix cm;
        for (std::size_t i = 0; i < c; ++i) cm.classes.push_back("c" + std::to_string(i));
        std::vector<std::vector<double>> dense(c, std::vector<double>(c));
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                // Occasional empty rows and columns exercise the zero-denominator rule.
                const std::size_t v = rng.index(5) == 0 ? 0 : rng.index(i == j ? 50 : 20);
                cm.counts.push_back(v);
                dense[i][j] = static_cast<double>(v);
            }
        if (cm.total() == 0) {
            cm.at(0, 0) = 1;
            dense[0][0] = 1;
        }
        const auto got = metrics(cm, Averaging::Weighted);
        if (!near(got.recall, got.accuracy, 1e-12))
            out.fail("matrix " + std::to_string(t) + ": recall " + str(got.recall) + " accuracy " +
                     str(got.accuracy));
        const auto ref = oracle::weighted_metrics(dense);
        if (!near(got.accuracy, ref.accuracy, 1e-9) || !near(got.precision, ref.precision, 1e-9) ||
            !near(got.recall, ref.recall, 1e-9) || !near(got.f1, ref.f1, 1e-9))
            out.fail("matrix " + std::to_string(t) + " differs from oracle");
    }
    return out;
}

namespace {

// Correct test predictions out of 60 for each row of the seed-42 run, in
// report order. Pinned from the first verified run.
constexpr std::array<int, 7> kPinnedCorrect = {59, 59, 59, 59, 56, 57, 59};
constexpr int kPinnedTestSize = 60;

}  // namespace

Outcome end_to_end_regression() {
    Outcome out;
    const auto start = Clock::now();
    texclass::testing::TempDir dir;
    const auto data = (dir / "data").string();
    const auto report = (dir / "report").string();
    std::ostringstream sink, errs;

    if (run_cli({"generate", "--out", data, "--seed", "42"}, sink, errs) != kExitOk) {
        out.fail("generate failed: " + errs.str());
        return out;
    }
    std::size_t images = 0;
    for (const auto& e : std::filesystem::recursive_directory_iterator(data))
        if (e.is_regular_file() && e.path().extension() == ".pgm") ++images;
    if (images != 600) out.fail("generated " + std::to_string(images) + " images");
    if (open_dataset(data).entries.size() != 600) out.fail("manifest entry count");

    const int rc = run_cli({"evaluate", "--dataset", data, "--out", report, "--seed", "42"}, sink, errs);
    if (rc != kExitOk) out.fail("evaluate exit " + std::to_string(rc) + ": " + errs.str());

    nlohmann::json doc;
    try {
        std::ifstream in(std::filesystem::path(report) / "report.json");
        doc = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        out.fail(std::string("report.json unreadable: ") + e.what());
        return out;
    }
    const auto& rows = doc["reports"];
    if (rows.size() != kGridCells.size()) {
        out.fail("report rows " + std::to_string(rows.size()));
        return out;
    }
    if (doc["test_size"] != kPinnedTestSize) out.fail("test size " + doc["test_size"].dump());
    std::array<double, 7> acc{};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i]["name"] != std::string(kGridCells[i].name)) out.fail("row " + std::to_string(i) + " order");
        if (rows[i]["failed"].get<bool>()) {
            out.fail("row " + std::to_string(i) + " failed");
            continue;
        }
        acc[i] = rows[i]["metrics"]["accuracy"].get<double>();
        const double pinned = 100.0 * kPinnedCorrect[i] / kPinnedTestSize;
        if (!near(acc[i], pinned, 1e-9))
            out.fail(std::string(kGridCells[i].name) + " accuracy " + str(acc[i]) + " != pinned " + str(pinned));
    }
    // Rows 0, 1 and 6 are COMBINED KNN, RF and the ensemble.
    if (acc[6] < std::min(acc[0], acc[1])) out.fail("ensemble below min(KNN, RF)");

    // The printed table carries the same rows in the same order.
    const auto table = sink.str();
    std::size_t pos = 0;
    for (const auto& cell : kGridCells) {
        const auto at = table.find(std::string(cell.name), pos);
        if (at == std::string::npos) {
            out.fail("table missing " + std::string(cell.name));
            break;
        }
        pos = at + 1;
    }
    check_runtime(out, start, 60.0);
    return out;
}

Outcome serialization_round_trips() {
    Outcome out;
    texclass::testing::TempDir dir;
    Rng rng(8);

    // Feature CSV.
    {
        std::vector<FeatureVector> set;
        for (int i = 0; i < 5; ++i) {
            FeatureVector v;
            v.variant = FeatureVariant::Combined;
            v.label = i % 2 ? "stripes" : "label, with \"quotes\"";
            v.source = "dir/img_" + std::to_string(i) + ".pgm";
            for (int j = 0; j < 41; ++j) v.values.push_back(rng.normal() * std::pow(10.0, rng.index(20) - 10.0));
            v.values[0] = 0.1;
            v.values[1] = 1e-300;
            v.values[2] = -0.0;
            set.push_back(std::move(v));
        }
        save_features(set, dir / "f.csv");
        if (load_features(dir / "f.csv") != set) out.fail("feature CSV");
        save_features({}, dir / "empty.csv");
        if (!load_features(dir / "empty.csv").empty()) out.fail("empty feature CSV");
    }

    // Manifest CSV.
    {
        DatasetManifest m;
        m.root = dir.path();
        m.classes = {"a", "b,c"};
        m.entries = {{"a/x.pgm", "a", {}}, {"a/x_rot005.pgm", "a", {5.0}}, {"b,c/y.pgm", "b,c", {}},
                     {"b,c/y_rot045.pgm", "b,c", {45.0}}};
        save_manifest(m, dir / "manifest.csv");
        const auto back = load_manifest(dir / "manifest.csv");
        if (back.entries != m.entries || back.classes != m.classes || back.root != m.root)
            out.fail("manifest CSV");
    }

    // Models.
    TrainingSet data;
    data.classes = {"a", "b", "c"};
    for (int i = 0; i < 60; ++i) {
        const std::size_t c = static_cast<std::size_t>(i % 3);
        std::vector<double> v(8);
        for (auto& x : v) x = rng.normal() + 0.7 * static_cast<double>(c);
        data.x.push_back(std::move(v));
        data.y.push_back(c);
    }
    RfConfig cfg;
    cfg.trees = 15;
    const auto knn = knn_fit(data, 5);
    const auto rf = rf_train(data, cfg, 3);
    const std::vector<Model> models = {knn, rf, make_ensemble(knn, rf)};
    const nlohmann::json meta = {{"note", "round trip"}, {"values", {1, 2, 3}}};
    for (const auto& m : models) {
        const std::string kind(model_kind(m));
        const auto path = dir / ("model_" + kind + ".json");
        save_model(m, path, meta);
        const auto file = load_model_file(path);
        if (file.metadata != meta) out.fail(kind + " metadata");
        if (model_to_json(file.model, meta) != model_to_json(m, meta)) out.fail(kind + " document");
        for (int q = 0; q < 50; ++q) {
            std::vector<double> v(8);
            for (auto& x : v) x = rng.normal() * 2.0;
            if (predict(file.model, v) != predict(m, v)) {
                out.fail(kind + " prediction " + std::to_string(q));
                break;
            }
        }
        if (const auto* r = std::get_if<RfModel>(&file.model); r && !(*r == rf)) out.fail("forest structure");
        if (const auto* k = std::get_if<KnnModel>(&file.model);
            k && (k->k != knn.k || k->train.x != knn.train.x || k->train.y != knn.train.y))
            out.fail("knn contents");
    }
    return out;
}

const std::vector<Criterion>& all() {
    static const std::vector<Criterion> list = {
        {"GLCM oracle equivalence", glcm_oracle_equivalence},
        {"GLCM hand fixtures", glcm_hand_fixtures},
        {"GLCM feature ranges", glcm_feature_ranges},
        {"LBP exhaustives", lbp_exhaustives},
        {"KNN oracle equivalence", knn_oracle_equivalence},
        {"RF determinism and sanity", rf_determinism_and_sanity},
        {"Metric identities", metric_identities},
        {"End-to-end seeded regression", end_to_end_regression},
        {"Serialization round-trips", serialization_round_trips},
    };
    return list;
}

}  // namespace texclass::criteria
