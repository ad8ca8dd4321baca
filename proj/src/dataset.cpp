#include "texclass/dataset.hpp"

#include "csv.hpp"
#include "texclass/error.hpp"
#include "texclass/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <thread>

namespace fs = std::filesystem;

namespace texclass {

std::string Provenance::to_string() const {
    return rotation ? "rotated:" + csv::format_double(*rotation) : "original";
}

Provenance Provenance::parse(std::string_view text) {
    if (text == "original") return {};
    constexpr std::string_view kPrefix = "rotated:";
    if (text.substr(0, kPrefix.size()) == kPrefix) return {csv::parse_double(text.substr(kPrefix.size()))};
    throw Error(ErrorCode::SchemaMismatch, "bad provenance '" + std::string(text) + "'");
}

void DatasetManifest::validate() const {
    std::set<std::string> seen;
    for (const auto& e : entries) {
        if (std::find(classes.begin(), classes.end(), e.label) == classes.end()) {
            throw Error(ErrorCode::SchemaMismatch, "entry " + e.path + " has unknown class '" + e.label + "'");
        }
        if (!seen.insert(e.path).second) throw Error(ErrorCode::SchemaMismatch, "duplicate path " + e.path);
    }
}

void save_manifest(const DatasetManifest& m, const fs::path& csv_path) {
    m.validate();
    std::string text = "path,label,provenance\n";
    for (const auto& e : m.entries) {
        text += csv::escape(e.path) + "," + csv::escape(e.label) + "," + e.provenance.to_string() + "\n";
    }
    csv::write_text(csv_path, text);
}

DatasetManifest load_manifest(const fs::path& csv_path) {
    const auto lines = csv::read_lines(csv_path);
    if (lines.empty() || lines.front() != "path,label,provenance") {
        throw Error(ErrorCode::SchemaMismatch, csv_path.string() + ": expected header path,label,provenance");
    }
    DatasetManifest m;
    m.root = csv_path.parent_path();
    std::set<std::string> classes;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto fields = csv::split_line(lines[i]);
        if (fields.size() != 3) {
            throw Error(ErrorCode::SchemaMismatch, csv_path.string() + ":" + std::to_string(i + 1) + ": expected 3 fields");
        }
        classes.insert(fields[1]);
        m.entries.push_back({std::move(fields[0]), std::move(fields[1]), Provenance::parse(fields[2])});
    }
    m.classes.assign(classes.begin(), classes.end());
    m.validate();
    return m;
}

IngestResult ingest(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw Error(ErrorCode::IoFailure, root.string() + " is not a directory");

    std::vector<fs::path> class_dirs;
    for (const auto& d : fs::directory_iterator(root)) {
        if (d.is_directory() && d.path().filename().string().front() != '.') class_dirs.push_back(d.path());
    }
    if (class_dirs.empty()) throw Error(ErrorCode::NoClasses, root.string() + " has no class subdirectories");
    std::sort(class_dirs.begin(), class_dirs.end());

    IngestResult out;
    out.manifest.root = root;
    for (const auto& dir : class_dirs) {
        const std::string label = dir.filename().string();
        std::vector<fs::path> files;
        for (const auto& f : fs::directory_iterator(dir)) {
            if (f.is_regular_file() && f.path().filename().string().front() != '.') files.push_back(f.path());
        }
        std::sort(files.begin(), files.end());
        bool any = false;
        for (const auto& f : files) {
            const std::string rel = label + "/" + f.filename().string();
            try {
                (void)load_image(f);
            } catch (const Error& e) {
                out.skipped.push_back(rel + ": " + e.what());
                continue;
            }
            out.manifest.entries.push_back({rel, label, {}});
            any = true;
        }
        if (any) out.manifest.classes.push_back(label);
    }
    if (out.manifest.entries.empty()) throw Error(ErrorCode::EmptyDataset, root.string() + " has no readable images");
    return out;
}

DatasetManifest open_dataset(const fs::path& root) {
    const auto manifest = root / kManifestFileName;
    if (fs::exists(manifest)) return load_manifest(manifest);
    return ingest(root).manifest;
}

namespace {

std::string angle_tag(double degrees) {
    if (degrees == std::floor(degrees) && degrees < 1000.0) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%03d", static_cast<int>(degrees));
        return buf;
    }
    auto s = csv::format_double(degrees);
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

bool same_file_location(const fs::path& a, const fs::path& b) {
    std::error_code ec;
    const auto ca = fs::weakly_canonical(a, ec);
    const auto cb = fs::weakly_canonical(b, ec);
    return ca == cb;
}

}  // namespace

DatasetManifest augment_rotations(const DatasetManifest& m, double step, int count, const fs::path& out) {
    if (!(step > 0.0) || count < 0 || step * count >= 360.0) {
        throw Error(ErrorCode::InvalidArgument, "rotation step * count must lie in (0, 360)");
    }
    DatasetManifest result;
    result.root = out;
    result.classes = m.classes;
    const bool in_place = same_file_location(m.root, out);

    for (const auto& e : m.entries) {
        if (!e.provenance.is_original()) {
            throw Error(ErrorCode::InvalidArgument, "manifest already contains rotated entry " + e.path);
        }
        const GrayImage img = load_image(m.resolve(e));
        std::error_code ec;
        fs::create_directories(out / e.label, ec);
        if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + (out / e.label).string());

        const std::string stem = fs::path(e.path).stem().string();
        std::string original_path = e.path;
        if (!in_place) {
            original_path = e.label + "/" + stem + ".pgm";
            save_pgm(img, out / original_path);
        }
        result.entries.push_back({original_path, e.label, {}});
        for (int r = 1; r <= count; ++r) {
            const double angle = step * r;
            const std::string rel = e.label + "/" + stem + "_rot" + angle_tag(angle) + ".pgm";
            save_pgm(rotate(img, angle), out / rel);
            result.entries.push_back({rel, e.label, {angle}});
        }
    }
    result.validate();
    return result;
}

// ---------------------------------------------------------------------------
// Synthetic textures
// ---------------------------------------------------------------------------

void SyntheticSpec::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::BadSpec, what); };
    if (per_class < 1) fail("per_class must be >= 1");
    if (width < 8 || height < 8) fail("synthetic images must be at least 8x8");
    if (noise_sigma < 0.0) fail("noise_sigma must be >= 0");
    if (checker_cell_min < 2 || checker_cell_max < checker_cell_min) fail("bad checkerboard cell range");
    if (checker_cell_min > std::min(width, height) / 2) fail("checkerboard cells too large for the image");
    if (stripe_period_min < 3.0 || stripe_period_max < stripe_period_min) fail("bad stripe period range");
    if (blob_sigma_min <= 0.0 || blob_sigma_max < blob_sigma_min) fail("bad blob smoothing range");
}

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return lo + static_cast<int>(rng.index(static_cast<std::uint64_t>(hi - lo + 1))); }

std::vector<double> checkerboard(const SyntheticSpec& s, Rng& rng) {
    const int cell = uniform_int(rng, s.checker_cell_min, s.checker_cell_max);
    const int phase_x = uniform_int(rng, 0, cell - 1);
    const int phase_y = uniform_int(rng, 0, cell - 1);
    const double low = rng.uniform(40.0, 100.0);
    const double high = low + rng.uniform(60.0, 130.0);
    std::vector<double> v(static_cast<std::size_t>(s.width) * s.height);
    for (int y = 0; y < s.height; ++y) {
        for (int x = 0; x < s.width; ++x) {
            const bool odd = (((x + phase_x) / cell) + ((y + phase_y) / cell)) % 2 != 0;
            v[static_cast<std::size_t>(y) * s.width + x] = odd ? high : low;
        }
    }
    return v;
}

std::vector<double> stripes(const SyntheticSpec& s, Rng& rng) {
    const double period = rng.uniform(s.stripe_period_min, s.stripe_period_max);
    const double theta = rng.uniform(0.0, std::numbers::pi);
    const double amplitude = rng.uniform(40.0, 100.0);
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    std::vector<double> v(static_cast<std::size_t>(s.width) * s.height);
    for (int y = 0; y < s.height; ++y) {
        for (int x = 0; x < s.width; ++x) {
            const double t = 2.0 * std::numbers::pi * (x * c + y * sn) / period + phase;
            v[static_cast<std::size_t>(y) * s.width + x] = 128.0 + amplitude * std::sin(t);
        }
    }
    return v;
}

// Separable Gaussian with clamped borders.
std::vector<double> blur(const std::vector<double>& src, int w, int h, double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double norm = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[static_cast<std::size_t>(i + radius)] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        norm += kernel[static_cast<std::size_t>(i + radius)];
    }
    for (auto& k : kernel) k /= norm;

    auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
    std::vector<double> tmp(src.size());
    std::vector<double> out(src.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                acc += kernel[static_cast<std::size_t>(i + radius)] * src[idx(std::clamp(x + i, 0, w - 1), y)];
            }
            tmp[idx(x, y)] = acc;
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                acc += kernel[static_cast<std::size_t>(i + radius)] * tmp[idx(x, std::clamp(y + i, 0, h - 1))];
            }
            out[idx(x, y)] = acc;
        }
    }
    return out;
}

std::vector<double> blob_noise(const SyntheticSpec& s, Rng& rng) {
    const double sigma = rng.uniform(s.blob_sigma_min, s.blob_sigma_max);
    const double low = rng.uniform(40.0, 90.0);
    const double high = rng.uniform(160.0, 220.0);
    std::vector<double> noise(static_cast<std::size_t>(s.width) * s.height);
    for (auto& n : noise) n = rng.normal();
    auto smooth = blur(noise, s.width, s.height, sigma);
    for (auto& v : smooth) v = v >= 0.0 ? high : low;
    return smooth;
}

GrayImage finish(const std::vector<double>& base, const SyntheticSpec& s, Rng& rng) {
    std::vector<std::uint8_t> px(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double v = base[i] + s.noise_sigma * rng.normal();
        px[i] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
    // Guarantee a non-constant image even with zero noise on a degenerate draw.
    if (std::all_of(px.begin(), px.end(), [&](std::uint8_t p) { return p == px.front(); })) {
        px.front() = static_cast<std::uint8_t>(px.front() < 128 ? px.front() + 1 : px.front() - 1);
    }
    return GrayImage(s.width, s.height, std::move(px));
}

}  // namespace

std::vector<SyntheticImage> synthesize(const SyntheticSpec& spec) {
    spec.validate();
    std::vector<SyntheticImage> out;
    out.reserve(kSyntheticClasses.size() * static_cast<std::size_t>(spec.per_class));
    const std::uint64_t base = derive_seed(spec.seed, kStageGenerate);
    for (std::size_t c = 0; c < kSyntheticClasses.size(); ++c) {
        const auto& label = kSyntheticClasses[c];
        for (int i = 0; i < spec.per_class; ++i) {
            Rng rng(derive_seed(base, c * 1'000'000 + static_cast<std::size_t>(i)));
            std::vector<double> texture;
            if (label == "checkerboard") texture = checkerboard(spec, rng);
            else if (label == "stripes") texture = stripes(spec, rng);
            else texture = blob_noise(spec, rng);
            char name[64];
            std::snprintf(name, sizeof name, "%s_%03d", label.c_str(), i);
            out.push_back({label, name, finish(texture, spec, rng)});
        }
    }
    return out;
}

DatasetManifest generate_synthetic(const SyntheticSpec& spec, const fs::path& out) {
    const auto images = synthesize(spec);
    DatasetManifest m;
    m.root = out;
    m.classes = kSyntheticClasses;
    for (const auto& label : kSyntheticClasses) {
        std::error_code ec;
        fs::create_directories(out / label, ec);
        if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + (out / label).string());
    }
    for (const auto& img : images) {
        const std::string rel = img.label + "/" + img.name + ".pgm";
        save_pgm(img.image, out / rel);
        m.entries.push_back({rel, img.label, {}});
    }
    save_manifest(m, out / kManifestFileName);
    return m;
}

ExtractionBatch extract_manifest(const DatasetManifest& m, FeatureVariant variant, const ExtractionConfig& cfg,
                                 unsigned threads) {
    cfg.validate();
    const std::size_t n = m.entries.size();
    std::vector<std::optional<FeatureVector>> results(n);
    std::vector<std::string> errors(n);
    auto work = [&](std::size_t i) {
        const auto& e = m.entries[i];
        try {
            results[i] = extract(load_image(m.resolve(e)), variant, cfg, e.label, e.path);
        } catch (const Error& err) {
            errors[i] = e.path + ": " + err.what();
        }
    };

    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) work(i);
            });
        }
    }

    ExtractionBatch batch;
    for (std::size_t i = 0; i < n; ++i) {
        if (results[i]) batch.vectors.push_back(std::move(*results[i]));
        else batch.failures.push_back(std::move(errors[i]));
    }
    return batch;
}

}  // namespace texclass
