#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "leafplan/image.hpp"
#include "leafplan/matrix.hpp"

namespace leafplan {

/// CIELAB coordinates (D65 reference white, 2° observer).
struct LabPixel {
    double L = 0.0; // lightness, [0,100] for in-gamut sRGB
    double a = 0.0; // green(-) .. red(+)
    double b = 0.0; // blue(-) .. yellow(+)
};

/// sRGB 8-bit -> CIELAB: inverse companding, linear RGB -> XYZ (D65), then
/// CIELAB with epsilon = 216/24389 and kappa = 24389/27.
LabPixel srgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Inverse of srgb_to_lab; out-of-gamut channels clamp to [0,255].
std::array<std::uint8_t, 3> lab_to_srgb(const LabPixel& lab);

/// The (a*, b*) rows extracted from an image for clustering, plus the mapping
/// from each row back to its row-major pixel index.
struct LabPixelMatrix {
    FeatureMatrix features;                // n x 2, columns (a, b)
    std::vector<std::size_t> row_to_pixel; // length n
};

/// Convert pixels to (a*, b*) feature rows in row-major pixel order. When
/// `include` is given only pixels with a true mask bit contribute; its
/// dimensions must match the image (errc::dimension_mismatch otherwise).
LabPixelMatrix image_to_ab_matrix(const RgbImage& img,
                                  const BinaryMask* include = nullptr);

} // namespace leafplan
