#pragma once

#include "texclass/imaging.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace texclass {

enum class LbpMode { Raw, RotationInvariant };

/// Neighbor ring, bit i at 45*i degrees counter-clockwise from East
/// (y down). Changing this order changes every raw code.
inline constexpr std::array<std::array<int, 2>, 8> kLbpNeighbors = {{
    {+1, 0}, {+1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, +1}, {0, +1}, {+1, +1},
}};

inline constexpr std::size_t kRawLbpBins = 256;
inline constexpr std::size_t kRotationInvariantLbpBins = 36;

struct LbpConfig {
    LbpMode mode = LbpMode::RotationInvariant;
};

struct LbpHistogram {
    LbpMode mode = LbpMode::RotationInvariant;
    std::vector<double> bins;  // 256 (raw) or 36 (ascending canonical code)
};

/// sum_i s(neighbors[i] - center) * 2^i with s(x) = 1 iff x >= 0.
std::uint8_t lbp_code(std::uint8_t center, std::span<const std::uint8_t, 8> neighbors) noexcept;

/// Minimum over the 8 cyclic bit rotations.
std::uint8_t ri_map(std::uint8_t code) noexcept;

/// The 36 canonical codes in ascending order.
const std::array<std::uint8_t, kRotationInvariantLbpBins>& ri_canonical_codes();

/// Bin index of a code in rotation-invariant histograms.
std::size_t ri_bin(std::uint8_t code);

/// Codes on raw intensities at every interior pixel (borders skipped).
/// Throws ImageTooSmall below 3x3.
LbpHistogram lbp_histogram(const GrayImage& img, const LbpConfig& cfg = {});

constexpr std::size_t lbp_block_length(LbpMode mode) noexcept {
    return mode == LbpMode::Raw ? kRawLbpBins : kRotationInvariantLbpBins;
}

}  // namespace texclass
