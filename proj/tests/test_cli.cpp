#include "test_support.hpp"
#include "texclass/classify.hpp"
#include "texclass/cli.hpp"
#include "texclass/features.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace texclass;
using texclass::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

/// Small dataset: 3 classes x 4 originals x 2 (one rotation) = 24 images of 32x32.
class CliDataset : public ::testing::Test {
protected:
    void SetUp() override {
        data = (dir / "data").string();
        const auto r = cli({"generate", "--out", data, "--per-class", "4", "--size", "32", "--rotations", "1",
                            "--rotation-step", "10"});
        ASSERT_EQ(r.code, kExitOk) << r.err;
    }

    TempDir dir;
    std::string data;
};

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(cli({"--help"}).code, kExitOk);
    EXPECT_EQ(cli({"evaluate", "--help"}).code, kExitOk);
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(cli({"generate"}).code, kExitUsage);
    EXPECT_EQ(cli({"generate", "--out", "x", "--bogus"}).code, kExitUsage);
    EXPECT_EQ(cli({"extract", "--out", "x"}).code, kExitUsage);
}

TEST(Cli, BadGenerateSpecWritesNothing) {
    TempDir dir;
    const auto out = dir / "g";
    EXPECT_EQ(cli({"generate", "--out", out.string(), "--per-class", "0"}).code, kExitUsage);
    EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, MissingDatasetIsUsageError) {
    TempDir dir;
    EXPECT_EQ(cli({"extract", "--dataset", (dir / "nope").string(), "--out", dir.path().string()}).code, kExitUsage);
}

TEST_F(CliDataset, GenerateIsDeterministic) {
    const auto again = (dir / "again").string();
    ASSERT_EQ(cli({"generate", "--out", again, "--per-class", "4", "--size", "32", "--rotations", "1",
                   "--rotation-step", "10"})
                  .code,
              kExitOk);
    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(data)) {
        if (!e.is_regular_file()) continue;
        ++files;
        const auto rel = fs::relative(e.path(), data);
        EXPECT_EQ(slurp(e.path()), slurp(fs::path(again) / rel)) << rel;
    }
    EXPECT_EQ(files, 25u);  // 24 images + manifest
}

TEST_F(CliDataset, ExtractLengths) {
    const auto feats = dir / "feats";
    auto r = cli({"extract", "--dataset", data, "--out", feats.string(), "--variant", "all", "--size", "32"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(load_features(feats / "features_combined.csv").size(), 24u);
    EXPECT_EQ(load_features(feats / "features_combined.csv")[0].values.size(), 41u);
    EXPECT_EQ(load_features(feats / "features_lbp.csv")[0].values.size(), 36u);

    r = cli({"extract", "--dataset", data, "--out", feats.string(), "--variant", "glcm", "--aggregation",
             "concatenate", "--size", "32"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(load_features(feats / "features_glcm.csv")[0].values.size(), 20u);
}

TEST_F(CliDataset, TrainPredictRoundTrip) {
    const auto feats = dir / "feats";
    const auto models = dir / "models";
    ASSERT_EQ(cli({"extract", "--dataset", data, "--out", feats.string(), "--size", "32"}).code, kExitOk);
    const auto csv = (feats / "features_combined.csv").string();
    auto r = cli({"train", "--features", csv, "--out", models.string(), "--model", "all", "--seed", "7", "--trees",
                  "10", "--k", "3", "--size", "32"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    for (const char* f : {"model_knn.json", "model_rf.json", "model_ensemble.json", "standardizer.json"})
        EXPECT_TRUE(fs::exists(models / f)) << f;

    const auto rf_bytes = slurp(models / "model_rf.json");
    ASSERT_EQ(cli({"train", "--features", csv, "--out", models.string(), "--model", "rf", "--seed", "7", "--trees",
                   "10", "--size", "32"})
                  .code,
              kExitOk);
    EXPECT_EQ(slurp(models / "model_rf.json"), rf_bytes);

    EXPECT_EQ(cli({"train", "--features", csv, "--out", models.string(), "--model", "knn", "--k", "99"}).code,
              kExitUsage);

    // One image.
    const auto image = (fs::path(data) / "stripes" / "stripes_000.pgm").string();
    r = cli({"predict", "--model", (models / "model_ensemble.json").string(), image});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto out = lines(r.out);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0], "path,label,score_blob-noise,score_checkerboard,score_stripes");
    std::istringstream row(out[1]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    ASSERT_EQ(fields.size(), 5u);
    EXPECT_EQ(fields[0], image);
    EXPECT_NEAR(std::stod(fields[2]) + std::stod(fields[3]) + std::stod(fields[4]), 1.0, 1e-9);

    // Whole directory, in manifest order.
    r = cli({"predict", "--model", (models / "model_knn.json").string(), data});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    out = lines(r.out);
    ASSERT_EQ(out.size(), 25u);
    EXPECT_NE(out[1].find("blob-noise_000.pgm"), std::string::npos);
}

TEST_F(CliDataset, PredictDimensionMismatch) {
    const auto feats = dir / "feats";
    const auto models = dir / "models";
    ASSERT_EQ(cli({"extract", "--dataset", data, "--out", feats.string(), "--variant", "glcm", "--size", "32"}).code,
              kExitOk);
    ASSERT_EQ(cli({"train", "--features", (feats / "features_glcm.csv").string(), "--out", models.string(),
                   "--model", "knn", "--k", "3", "--size", "32"})
                  .code,
              kExitOk);
    // Hand-edit the metadata so the model claims to take COMBINED vectors.
    auto doc = nlohmann::json::parse(slurp(models / "model_knn.json"));
    doc["metadata"]["variant"] = "combined";
    std::ofstream(models / "model_knn.json") << doc.dump();
    const auto r = cli({"predict", "--model", (models / "model_knn.json").string(), data});
    EXPECT_EQ(r.code, kExitFailure);
    EXPECT_NE(r.err.find("41"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("5"), std::string::npos) << r.err;
}

TEST_F(CliDataset, EvaluateIsDeterministic) {
    auto run = [&](const std::string& name) {
        const auto out = dir / name;
        const auto r = cli({"evaluate", "--dataset", data, "--out", out.string(), "--seed", "7", "--size", "32",
                            "--trees", "10", "--k", "3", "--train-fraction", "0.75"});
        EXPECT_EQ(r.code, kExitOk) << r.err;
        return std::pair{r.out, slurp(out / "report.json")};
    };
    const auto a = run("r1");
    const auto b = run("r2");
    EXPECT_EQ(a.second, b.second);
    const auto table = lines(a.first);
    const auto other = lines(b.first);
    ASSERT_EQ(table.size(), other.size());
    // Everything but the trailing line naming the output directory.
    for (std::size_t i = 0; i + 1 < table.size(); ++i) EXPECT_EQ(table[i], other[i]);
    std::size_t rows = 0;
    for (const auto& l : table)
        if (l.find(" + ") != std::string::npos) ++rows;
    EXPECT_EQ(rows, 7u);
    EXPECT_TRUE(fs::exists(dir / "r1" / "confusion_combined_ensemble.csv"));
    EXPECT_EQ(cli({"evaluate", "--out", (dir / "r3").string()}).code, kExitUsage);
}
