#pragma once

#include <cstdint>
#include <random>

namespace texclass {

/// SplitMix64 finalizer. Used to derive independent stream seeds from a
/// master seed so that every stage (generation, split, tree t) is
/// reproducible on its own.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return mix_seed(mix_seed(master) ^ mix_seed(stream + 0x632BE59BD9B4E019ull));
}

// Stage tags for derive_seed(master, tag).
inline constexpr std::uint64_t kStageGenerate = 1;
inline constexpr std::uint64_t kStageSplit = 2;
inline constexpr std::uint64_t kStageForest = 3;

/// Portable RNG: mt19937_64 output is fixed by the standard, but the
/// standard distributions are not, so the bounded and real-valued draws are
/// implemented here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t index(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return v % n;
    }

    /// Uniform real in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace texclass
