#include "texclass/imaging.hpp"

#include "texclass/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

namespace texclass {

GrayImage::GrayImage(int width, int height) : GrayImage(width, height, {}) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width < 1 || height < 1) {
        throw Error(ErrorCode::ZeroDimension,
                    "image dimensions must be >= 1, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
    const auto expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (data_.empty()) {
        data_.assign(expected, 0);
    } else if (data_.size() != expected) {
        throw Error(ErrorCode::LengthMismatch, "pixel buffer has " + std::to_string(data_.size()) +
                                                   " bytes, expected " + std::to_string(expected));
    }
}

QuantizedImage::QuantizedImage(int width, int height, int levels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), levels_(levels), data_(std::move(data)) {
    if (width < 1 || height < 1) throw Error(ErrorCode::ZeroDimension, "quantized image is empty");
    if (levels < 2 || levels > 256) {
        throw Error(ErrorCode::BadLevelCount, "levels must be in [2, 256], got " + std::to_string(levels));
    }
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw Error(ErrorCode::LengthMismatch, "quantized buffer size does not match dimensions");
    }
    for (auto v : data_) {
        if (v >= levels) throw Error(ErrorCode::InvalidArgument, "level index out of range");
    }
}

// ---------------------------------------------------------------------------
// Netpbm decoding
// ---------------------------------------------------------------------------

namespace {

class PnmReader {
public:
    explicit PnmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Skips whitespace and '#' comments, then reads an unsigned decimal.
    long read_uint() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw Error(ErrorCode::CorruptFile, "expected a number in PNM stream");
        }
        long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 0x7fffffffL) throw Error(ErrorCode::CorruptFile, "number too large in PNM header");
            ++pos_;
        }
        return v;
    }

    // Binary payload starts after exactly one whitespace byte following maxval.
    void consume_single_whitespace() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw Error(ErrorCode::CorruptFile, "missing whitespace before binary payload");
        }
        ++pos_;
    }

    std::span<const std::uint8_t> remaining() const { return bytes_.subspan(pos_); }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 2;  // past the magic number
};

std::uint8_t scale_sample(long v, long maxval) {
    if (v > maxval) throw Error(ErrorCode::CorruptFile, "sample exceeds maxval");
    if (maxval == 255) return static_cast<std::uint8_t>(v);
    return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

std::vector<std::uint8_t> read_samples(PnmReader& reader, bool binary, std::size_t count, long maxval) {
    std::vector<std::uint8_t> out(count);
    if (!binary) {
        for (auto& s : out) s = scale_sample(reader.read_uint(), maxval);
        return out;
    }
    reader.consume_single_whitespace();
    const auto payload = reader.remaining();
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    if (payload.size() < count * bytes_per_sample) {
        throw Error(ErrorCode::CorruptFile, "truncated PNM payload: have " + std::to_string(payload.size()) +
                                                " bytes, need " + std::to_string(count * bytes_per_sample));
    }
    for (std::size_t i = 0; i < count; ++i) {
        const long v = bytes_per_sample == 2 ? (long{payload[2 * i]} << 8) | payload[2 * i + 1] : payload[i];
        out[i] = scale_sample(v, maxval);
    }
    return out;
}

}  // namespace

GrayImage decode_image(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P') {
        throw Error(ErrorCode::UnsupportedFormat, "not a Netpbm raster");
    }
    const char kind = static_cast<char>(bytes[1]);
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
        throw Error(ErrorCode::UnsupportedFormat, std::string("unsupported Netpbm variant P") + kind);
    }
    const bool binary = kind == '5' || kind == '6';
    const bool rgb = kind == '3' || kind == '6';

    PnmReader reader(bytes);
    const long width = reader.read_uint();
    const long height = reader.read_uint();
    const long maxval = reader.read_uint();
    if (width < 1 || height < 1) throw Error(ErrorCode::CorruptFile, "PNM dimensions must be positive");
    if (maxval < 1 || maxval > 65535) throw Error(ErrorCode::CorruptFile, "PNM maxval out of range");
    if (width * height > (1L << 28)) throw Error(ErrorCode::CorruptFile, "PNM dimensions implausibly large");

    const auto pixels = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    auto samples = read_samples(reader, binary, rgb ? 3 * pixels : pixels, maxval);
    if (rgb) {
        return to_grayscale(RgbImage{static_cast<int>(width), static_cast<int>(height), std::move(samples)});
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(samples));
}

GrayImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return decode_image(bytes);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
    const std::string header =
        "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
    return out;
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
    const auto bytes = encode_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// Pixel transforms
// ---------------------------------------------------------------------------

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

GrayImage to_grayscale(const RgbImage& rgb) {
    const auto pixels = static_cast<std::size_t>(rgb.width) * static_cast<std::size_t>(std::max(rgb.height, 0));
    if (rgb.width < 1 || rgb.height < 1) throw Error(ErrorCode::ZeroDimension, "RGB image is empty");
    if (rgb.data.size() != 3 * pixels) throw Error(ErrorCode::CorruptFile, "RGB buffer size mismatch");
    std::vector<std::uint8_t> gray(pixels);
    for (std::size_t i = 0; i < pixels; ++i) {
        gray[i] = luma(rgb.data[3 * i], rgb.data[3 * i + 1], rgb.data[3 * i + 2]);
    }
    return GrayImage(rgb.width, rgb.height, std::move(gray));
}

namespace {

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Caller guarantees 0 <= sx <= w-1 and 0 <= sy <= h-1.
std::uint8_t sample(const GrayImage& img, double sx, double sy, Interpolation interp) {
    if (interp == Interpolation::Nearest) {
        const int x = std::clamp(static_cast<int>(std::lround(sx)), 0, img.width() - 1);
        const int y = std::clamp(static_cast<int>(std::lround(sy)), 0, img.height() - 1);
        return img.at(x, y);
    }
    const int x0 = std::clamp(static_cast<int>(std::floor(sx)), 0, img.width() - 1);
    const int y0 = std::clamp(static_cast<int>(std::floor(sy)), 0, img.height() - 1);
    const int x1 = std::min(x0 + 1, img.width() - 1);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double fx = sx - x0;
    const double fy = sy - y0;
    if (fx == 0.0 && fy == 0.0) return img.at(x0, y0);
    const double top = img.at(x0, y0) + fx * (img.at(x1, y0) - img.at(x0, y0));
    const double bottom = img.at(x0, y1) + fx * (img.at(x1, y1) - img.at(x0, y1));
    return to_byte(top + fy * (bottom - top));
}

}  // namespace

GrayImage resize(const GrayImage& img, int out_width, int out_height, Interpolation interp) {
    if (out_width < 1 || out_height < 1) {
        throw Error(ErrorCode::ZeroDimension, "resize target must be >= 1x1");
    }
    if (out_width == img.width() && out_height == img.height()) return img;

    GrayImage out(out_width, out_height);
    const double scale_x = static_cast<double>(img.width()) / out_width;
    const double scale_y = static_cast<double>(img.height()) / out_height;
    for (int y = 0; y < out_height; ++y) {
        const double sy = std::clamp((y + 0.5) * scale_y - 0.5, 0.0, img.height() - 1.0);
        for (int x = 0; x < out_width; ++x) {
            const double sx = std::clamp((x + 0.5) * scale_x - 0.5, 0.0, img.width() - 1.0);
            out.at(x, y) = sample(img, sx, sy, interp);
        }
    }
    return out;
}

GrayImage rotate(const GrayImage& img, double degrees, Interpolation interp) {
    double turn = std::fmod(degrees, 360.0);
    if (turn < 0) turn += 360.0;
    if (turn == 0.0) return img;

    double c = 0.0;
    double s = 0.0;
    if (turn == 90.0) {
        s = 1.0;
    } else if (turn == 180.0) {
        c = -1.0;
    } else if (turn == 270.0) {
        s = -1.0;
    } else {
        const double rad = turn * std::numbers::pi / 180.0;
        c = std::cos(rad);
        s = std::sin(rad);
    }

    constexpr double kEdgeTolerance = 1e-9;
    const double cx = (img.width() - 1) / 2.0;
    const double cy = (img.height() - 1) / 2.0;
    const double max_x = img.width() - 1.0;
    const double max_y = img.height() - 1.0;

    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        const double dy = y - cy;
        for (int x = 0; x < img.width(); ++x) {
            const double dx = x - cx;
            const double sx = cx + dx * c - dy * s;
            const double sy = cy + dx * s + dy * c;
            if (sx < -kEdgeTolerance || sy < -kEdgeTolerance || sx > max_x + kEdgeTolerance ||
                sy > max_y + kEdgeTolerance) {
                continue;  // fill stays 0
            }
            out.at(x, y) = sample(img, std::clamp(sx, 0.0, max_x), std::clamp(sy, 0.0, max_y), interp);
        }
    }
    return out;
}

QuantizedImage quantize(const GrayImage& img, int levels) {
    if (levels < 2 || levels > 256) {
        throw Error(ErrorCode::BadLevelCount, "levels must be in [2, 256], got " + std::to_string(levels));
    }
    std::vector<std::uint8_t> q(img.pixels().size());
    std::transform(img.pixels().begin(), img.pixels().end(), q.begin(), [levels](std::uint8_t v) {
        return static_cast<std::uint8_t>((static_cast<unsigned>(v) * static_cast<unsigned>(levels)) >> 8);
    });
    return QuantizedImage(img.width(), img.height(), levels, std::move(q));
}

GrayImage transpose(const GrayImage& img) {
    GrayImage out(img.height(), img.width());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) out.at(y, x) = img.at(x, y);
    }
    return out;
}

}  // namespace texclass
