#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "leafplan/image.hpp"

namespace leafplan {

/// Decode a PNG or JPEG byte stream into an 8-bit RGB raster. The format is
/// sniffed from the file magic. Palette, gray, and alpha PNG variants are
/// expanded to RGB; 16-bit PNG samples are reduced to 8 bits by rounding
/// division by 257. Baseline and progressive JPEG are accepted.
///
/// Throws Error with errc::unsupported_format, errc::corrupt_file, or
/// errc::zero_dimension.
RgbImage decode_image(std::span<const std::uint8_t> bytes);

RgbImage decode_image_file(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const RgbImage& img);
std::vector<std::uint8_t> encode_png(const GrayImage& img);
std::vector<std::uint8_t> encode_jpeg(const RgbImage& img, int quality = 90);

/// Mask rendered as an 8-bit grayscale PNG, 0 = black, 255 = white.
std::vector<std::uint8_t> encode_png(const BinaryMask& mask);

void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

} // namespace leafplan
