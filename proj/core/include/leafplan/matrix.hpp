#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "leafplan/error.hpp"

namespace leafplan {

/// Dense row-major matrix of doubles. Rows are data points, columns are
/// features.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // rows * cols, row-major

    FeatureMatrix() = default;
    FeatureMatrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<const double> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }
    std::span<double> row(std::size_t r) {
        return {data.data() + r * cols, cols};
    }

    bool operator==(const FeatureMatrix&) const = default;
};

} // namespace leafplan
