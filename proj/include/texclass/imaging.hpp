#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace texclass {

/// Row-major 8-bit grayscale raster.
class GrayImage {
public:
    GrayImage() = default;
    /// Zero-filled image. Throws ZeroDimension if either side is < 1.
    GrayImage(int width, int height);
    /// Throws ZeroDimension, or LengthMismatch when data.size() != width*height.
    GrayImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return data_.empty(); }

    std::uint8_t at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    std::uint8_t& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    std::span<const std::uint8_t> pixels() const noexcept { return data_; }
    std::span<std::uint8_t> pixels() noexcept { return data_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Interleaved 8-bit RGB raster.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // size 3*width*height
};

/// Gray levels 0..levels-1 after quantization.
class QuantizedImage {
public:
    QuantizedImage(int width, int height, int levels, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int levels() const noexcept { return levels_; }
    int at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    std::span<const std::uint8_t> data() const noexcept { return data_; }

private:
    int width_;
    int height_;
    int levels_;
    std::vector<std::uint8_t> data_;  // level indices; 256 levels still fit in a byte
};

enum class Interpolation { Bilinear, Nearest };

/// Decodes PGM (P2/P5) and PPM (P3/P6) rasters. RGB inputs go through
/// to_grayscale. Samples with maxval != 255 are rescaled to 0..255.
GrayImage decode_image(std::span<const std::uint8_t> bytes);
GrayImage load_image(const std::filesystem::path& path);

/// Binary P5 with maxval 255.
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

/// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B), computed in integers.
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;
GrayImage to_grayscale(const RgbImage& rgb);

/// Center-aligned sampling with edge clamping. Same-size resize is the identity.
GrayImage resize(const GrayImage& img, int out_width, int out_height,
                 Interpolation interp = Interpolation::Bilinear);

/// Rotates counter-clockwise (as displayed, y pointing down) about the image
/// center, keeping the canvas size. Samples falling outside the source are 0.
/// Multiples of 90 degrees use exact sin/cos so they permute pixels.
GrayImage rotate(const GrayImage& img, double degrees,
                 Interpolation interp = Interpolation::Bilinear);

/// level = floor(intensity * levels / 256). levels must be in [2, 256].
QuantizedImage quantize(const GrayImage& img, int levels);

/// Swaps axes: out(x, y) = in(y, x).
GrayImage transpose(const GrayImage& img);

}  // namespace texclass
