#include "leafplan/colorspace.hpp"

#include <algorithm>
#include <cmath>

namespace leafplan {

namespace {

// D65, 2° observer. The white point equals the sRGB matrix row sums so the
// reference white lands exactly on L = 100, a = b = 0.
constexpr double kWhiteX = 0.9504700;
constexpr double kWhiteY = 1.0000001;
constexpr double kWhiteZ = 1.0888300;

constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double srgb_decompand(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double srgb_compand(double c) {
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) {
    return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

std::uint8_t to_byte(double c) {
    return static_cast<std::uint8_t>(
        std::clamp(std::lround(c * 255.0), 0L, 255L));
}

} // namespace

LabPixel srgb_to_lab(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
    const double r = srgb_decompand(r8 / 255.0);
    const double g = srgb_decompand(g8 / 255.0);
    const double b = srgb_decompand(b8 / 255.0);

    const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

    const double fx = lab_f(x / kWhiteX);
    const double fy = lab_f(y / kWhiteY);
    const double fz = lab_f(z / kWhiteZ);

    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::array<std::uint8_t, 3> lab_to_srgb(const LabPixel& lab) {
    const double fy = (lab.L + 16.0) / 116.0;
    const double fx = fy + lab.a / 500.0;
    const double fz = fy - lab.b / 200.0;

    const double fx3 = fx * fx * fx;
    const double fz3 = fz * fz * fz;
    const double xr = fx3 > kEpsilon ? fx3 : (116.0 * fx - 16.0) / kKappa;
    const double yr = lab.L > kKappa * kEpsilon
                          ? std::pow((lab.L + 16.0) / 116.0, 3.0)
                          : lab.L / kKappa;
    const double zr = fz3 > kEpsilon ? fz3 : (116.0 * fz - 16.0) / kKappa;

    const double x = xr * kWhiteX;
    const double y = yr * kWhiteY;
    const double z = zr * kWhiteZ;

    const double r = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
    const double g = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
    const double b = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;

    return {to_byte(srgb_compand(std::clamp(r, 0.0, 1.0))),
            to_byte(srgb_compand(std::clamp(g, 0.0, 1.0))),
            to_byte(srgb_compand(std::clamp(b, 0.0, 1.0)))};
}

LabPixelMatrix image_to_ab_matrix(const RgbImage& img, const BinaryMask* include) {
    if (include &&
        (include->width != img.width || include->height != img.height))
        throw Error(errc::dimension_mismatch,
                    "image_to_ab_matrix: mask dimensions do not match image");

    LabPixelMatrix out;
    out.row_to_pixel.reserve(img.pixel_count());
    std::vector<double> features;
    features.reserve(img.pixel_count() * 2);

    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        if (include && include->data[i] == 0)
            continue;
        const LabPixel lab = srgb_to_lab(img.data[3 * i], img.data[3 * i + 1],
                                         img.data[3 * i + 2]);
        features.push_back(lab.a);
        features.push_back(lab.b);
        out.row_to_pixel.push_back(i);
    }

    out.features.rows = out.row_to_pixel.size();
    out.features.cols = 2;
    out.features.data = std::move(features);
    return out;
}

} // namespace leafplan
