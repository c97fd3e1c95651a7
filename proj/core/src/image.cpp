#include "leafplan/image.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace leafplan {

std::string_view errc_name(errc code) {
    switch (code) {
    case errc::unsupported_format: return "unsupported_format";
    case errc::corrupt_file: return "corrupt_file";
    case errc::zero_dimension: return "zero_dimension";
    case errc::degenerate_histogram: return "degenerate_histogram";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::too_few_points: return "too_few_points";
    case errc::non_finite_input: return "non_finite_input";
    case errc::empty_foreground: return "empty_foreground";
    case errc::empty_leaf: return "empty_leaf";
    case errc::empty_input: return "empty_input";
    case errc::shape_mismatch: return "shape_mismatch";
    case errc::empty_histogram: return "empty_histogram";
    case errc::invalid_argument: return "invalid_argument";
    }
    return "unknown";
}

RgbImage::RgbImage(std::size_t w, std::size_t h,
                   std::uint8_t r, std::uint8_t g, std::uint8_t b)
    : width(w), height(h), data(w * h * 3) {
    for (std::size_t i = 0; i < w * h; ++i) {
        data[3 * i + 0] = r;
        data[3 * i + 1] = g;
        data[3 * i + 2] = b;
    }
}

GrayImage to_grayscale(const RgbImage& img) {
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const double y = 0.2989 * img.data[3 * i + 0] +
                         0.5870 * img.data[3 * i + 1] +
                         0.1140 * img.data[3 * i + 2];
        out.data[i] = static_cast<std::uint8_t>(
            std::clamp(std::lround(y), 0L, 255L));
    }
    return out;
}

int otsu_threshold(const GrayImage& img) {
    if (img.data.empty())
        throw Error(errc::degenerate_histogram, "otsu_threshold: empty image");

    std::array<std::uint64_t, 256> hist{};
    for (std::uint8_t v : img.data)
        ++hist[v];

    const auto total = static_cast<std::uint64_t>(img.data.size());
    if (std::any_of(hist.begin(), hist.end(),
                    [&](std::uint64_t c) { return c == total; }))
        throw Error(errc::degenerate_histogram,
                    "otsu_threshold: all pixels share one intensity");

    double sum_all = 0.0;
    for (int v = 0; v < 256; ++v)
        sum_all += static_cast<double>(v) * static_cast<double>(hist[v]);

    // Scan every split t: class 0 holds intensities <= t, class 1 the rest.
    int best = 0;
    double best_variance = -1.0;
    std::uint64_t w0 = 0;
    double sum0 = 0.0;
    for (int t = 0; t < 256; ++t) {
        w0 += hist[t];
        sum0 += static_cast<double>(t) * static_cast<double>(hist[t]);
        const std::uint64_t w1 = total - w0;
        if (w0 == 0 || w1 == 0)
            continue;
        const double mean0 = sum0 / static_cast<double>(w0);
        const double mean1 = (sum_all - sum0) / static_cast<double>(w1);
        const double diff = mean0 - mean1;
        const double variance = static_cast<double>(w0) *
                                static_cast<double>(w1) * diff * diff;
        if (variance > best_variance) {
            best_variance = variance;
            best = t;
        }
    }
    return best;
}

BinaryMask binarize(const GrayImage& img, int threshold) {
    if (threshold < 0 || threshold > 255)
        throw Error(errc::invalid_argument, "binarize: threshold outside [0,255]");
    BinaryMask mask(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        mask.data[i] = img.data[i] > threshold ? 1 : 0;
    return mask;
}

std::size_t count_white(const BinaryMask& mask) {
    return static_cast<std::size_t>(
        std::count_if(mask.data.begin(), mask.data.end(),
                      [](std::uint8_t v) { return v != 0; }));
}

std::size_t count_black(const BinaryMask& mask) {
    return mask.data.size() - count_white(mask);
}

} // namespace leafplan
