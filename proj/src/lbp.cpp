#include "texclass/lbp.hpp"

#include "texclass/error.hpp"

#include <algorithm>
#include <string>

namespace texclass {

std::uint8_t lbp_code(std::uint8_t center, std::span<const std::uint8_t, 8> neighbors) noexcept {
    unsigned code = 0;
    for (unsigned i = 0; i < 8; ++i) {
        if (neighbors[i] >= center) code |= 1u << i;
    }
    return static_cast<std::uint8_t>(code);
}

std::uint8_t ri_map(std::uint8_t code) noexcept {
    unsigned best = code;
    unsigned c = code;
    for (int r = 1; r < 8; ++r) {
        c = ((c >> 1) | (c << 7)) & 0xFFu;
        best = std::min(best, c);
    }
    return static_cast<std::uint8_t>(best);
}

namespace {

struct RiTables {
    std::array<std::uint8_t, kRotationInvariantLbpBins> canonical{};
    std::array<std::uint8_t, 256> bin_of_code{};
};

const RiTables& ri_tables() {
    static const RiTables tables = [] {
        RiTables t;
        std::size_t next = 0;
        for (unsigned c = 0; c < 256; ++c) {
            if (ri_map(static_cast<std::uint8_t>(c)) == c) t.canonical[next++] = static_cast<std::uint8_t>(c);
        }
        for (unsigned c = 0; c < 256; ++c) {
            const auto canon = ri_map(static_cast<std::uint8_t>(c));
            const auto it = std::lower_bound(t.canonical.begin(), t.canonical.end(), canon);
            t.bin_of_code[c] = static_cast<std::uint8_t>(it - t.canonical.begin());
        }
        return t;
    }();
    return tables;
}

}  // namespace

const std::array<std::uint8_t, kRotationInvariantLbpBins>& ri_canonical_codes() { return ri_tables().canonical; }

std::size_t ri_bin(std::uint8_t code) { return ri_tables().bin_of_code[code]; }

LbpHistogram lbp_histogram(const GrayImage& img, const LbpConfig& cfg) {
    if (img.width() < 3 || img.height() < 3) {
        throw Error(ErrorCode::ImageTooSmall, "LBP needs at least 3x3 pixels, got " + std::to_string(img.width()) +
                                                  "x" + std::to_string(img.height()));
    }
    std::array<std::uint64_t, 256> counts{};
    std::array<std::uint8_t, 8> ring{};
    for (int y = 1; y < img.height() - 1; ++y) {
        for (int x = 1; x < img.width() - 1; ++x) {
            for (std::size_t i = 0; i < 8; ++i) ring[i] = img.at(x + kLbpNeighbors[i][0], y + kLbpNeighbors[i][1]);
            ++counts[lbp_code(img.at(x, y), ring)];
        }
    }

    const double interior = static_cast<double>(img.width() - 2) * static_cast<double>(img.height() - 2);
    LbpHistogram h;
    h.mode = cfg.mode;
    h.bins.assign(lbp_block_length(cfg.mode), 0.0);
    if (cfg.mode == LbpMode::Raw) {
        for (std::size_t c = 0; c < 256; ++c) h.bins[c] = static_cast<double>(counts[c]) / interior;
    } else {
        std::array<std::uint64_t, kRotationInvariantLbpBins> merged{};
        for (std::size_t c = 0; c < 256; ++c) merged[ri_bin(static_cast<std::uint8_t>(c))] += counts[c];
        for (std::size_t b = 0; b < merged.size(); ++b) h.bins[b] = static_cast<double>(merged[b]) / interior;
    }
    return h;
}

}  // namespace texclass
