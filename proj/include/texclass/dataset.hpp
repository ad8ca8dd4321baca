#pragma once

#include "texclass/features.hpp"
#include "texclass/imaging.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace texclass {

/// Where an entry came from: an original image, or a rotated copy.
struct Provenance {
    std::optional<double> rotation;  // degrees; empty for originals

    bool is_original() const noexcept { return !rotation.has_value(); }
    std::string to_string() const;  // "original" or "rotated:<deg>"
    static Provenance parse(std::string_view text);

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ManifestEntry {
    std::string path;  // relative to the manifest root, '/' separated
    std::string label;
    Provenance provenance;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
    std::filesystem::path root;
    std::vector<std::string> classes;
    std::vector<ManifestEntry> entries;

    /// Throws SchemaMismatch when an entry's class is unknown or a path repeats.
    void validate() const;
    std::filesystem::path resolve(const ManifestEntry& e) const { return root / e.path; }
};

inline constexpr const char* kManifestFileName = "manifest.csv";

/// CSV `path,label,provenance`. The class list is the sorted set of labels.
void save_manifest(const DatasetManifest& m, const std::filesystem::path& csv_path);
/// The loaded manifest's root is the CSV's directory.
DatasetManifest load_manifest(const std::filesystem::path& csv_path);

struct IngestResult {
    DatasetManifest manifest;
    std::vector<std::string> skipped;  // unreadable files with the reason
};

/// One subdirectory per class under root. Classes and entries come out sorted.
/// Throws NoClasses when root has no subdirectories and EmptyDataset when no
/// image could be read.
IngestResult ingest(const std::filesystem::path& root);

/// Manifest from root/manifest.csv when present, otherwise ingest(root).
DatasetManifest open_dataset(const std::filesystem::path& root);

/// Writes `count` rotated copies (step, 2*step, ..., count*step degrees) of
/// every original into out/<class>/, copying originals there too when out is
/// not the source root. Returns originals followed by their rotations.
DatasetManifest augment_rotations(const DatasetManifest& m, double step, int count,
                                  const std::filesystem::path& out);

struct SyntheticSpec {
    int per_class = 20;
    int width = 128;
    int height = 128;
    double noise_sigma = 6.0;
    std::uint64_t seed = 42;

    // Jitter ranges per texture family.
    int checker_cell_min = 6;
    int checker_cell_max = 16;
    double stripe_period_min = 6.0;
    double stripe_period_max = 20.0;
    double blob_sigma_min = 2.0;
    double blob_sigma_max = 5.0;

    /// Throws BadSpec.
    void validate() const;
};

/// Class names in sorted order.
inline const std::vector<std::string> kSyntheticClasses = {"blob-noise", "checkerboard", "stripes"};

struct SyntheticImage {
    std::string label;
    std::string name;  // file stem
    GrayImage image;
};

/// Pure and deterministic in the spec; image i of class c uses its own RNG
/// stream.
std::vector<SyntheticImage> synthesize(const SyntheticSpec& spec);

/// synthesize() written as out/<class>/<name>.pgm plus out/manifest.csv.
DatasetManifest generate_synthetic(const SyntheticSpec& spec, const std::filesystem::path& out);

struct ExtractionBatch {
    std::vector<FeatureVector> vectors;  // manifest order, failures omitted
    std::vector<std::string> failures;
};

/// Loads and extracts every entry. `source` is the entry path.
ExtractionBatch extract_manifest(const DatasetManifest& m, FeatureVariant variant, const ExtractionConfig& cfg,
                                 unsigned threads = 0);

}  // namespace texclass
