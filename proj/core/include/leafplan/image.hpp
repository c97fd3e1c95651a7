#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "leafplan/error.hpp"

namespace leafplan {

/// 8-bit RGB raster, row-major, three channels per pixel.
struct RgbImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> data; // width * height * 3

    RgbImage() = default;
    RgbImage(std::size_t w, std::size_t h,
             std::uint8_t r = 0, std::uint8_t g = 0, std::uint8_t b = 0);

    std::size_t pixel_count() const { return width * height; }

    const std::uint8_t* pixel(std::size_t x, std::size_t y) const {
        return data.data() + 3 * (y * width + x);
    }
    std::uint8_t* pixel(std::size_t x, std::size_t y) {
        return data.data() + 3 * (y * width + x);
    }

    bool operator==(const RgbImage&) const = default;
};

/// 8-bit single-channel raster.
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> data; // width * height

    GrayImage() = default;
    GrayImage(std::size_t w, std::size_t h, std::uint8_t fill = 0)
        : width(w), height(h), data(w * h, fill) {}

    std::size_t pixel_count() const { return width * height; }

    bool operator==(const GrayImage&) const = default;
};

/// Boolean raster; nonzero = white/foreground.
struct BinaryMask {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> data; // width * height, values 0 or 1

    BinaryMask() = default;
    BinaryMask(std::size_t w, std::size_t h, bool fill = false)
        : width(w), height(h), data(w * h, fill ? 1 : 0) {}

    std::size_t pixel_count() const { return width * height; }

    bool get(std::size_t x, std::size_t y) const { return data[y * width + x] != 0; }
    void set(std::size_t x, std::size_t y, bool v) { data[y * width + x] = v ? 1 : 0; }

    bool operator==(const BinaryMask&) const = default;
};

/// Rec. 601 luma: round(0.2989 R + 0.5870 G + 0.1140 B), clamped to [0,255].
GrayImage to_grayscale(const RgbImage& img);

/// Threshold maximizing between-class variance over the 256-level histogram.
/// Ties break toward the lowest level. Throws errc::degenerate_histogram when
/// every pixel has the same intensity.
int otsu_threshold(const GrayImage& img);

/// Pixel is white iff intensity is strictly greater than `threshold`.
BinaryMask binarize(const GrayImage& img, int threshold);

std::size_t count_white(const BinaryMask& mask);
std::size_t count_black(const BinaryMask& mask);

} // namespace leafplan
