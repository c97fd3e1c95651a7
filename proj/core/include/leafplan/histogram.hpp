#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace leafplan {

struct Histogram {
    std::size_t bin_count = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
};

/// Uniform bins over [lo, hi]; the upper edge is closed (values equal to hi
/// land in the last bin) and out-of-range values clamp to the end bins.
/// Throws errc::empty_input for an empty value sequence and
/// errc::invalid_argument for bin_count = 0 or lo >= hi.
Histogram compute_histogram(std::span<const double> values,
                            std::size_t bin_count, double lo, double hi);

enum class HistogramMetric { intersection, chi_square, bhattacharyya };

/// Compare two histograms after normalizing each to unit sum.
///   intersection:  sum of min(p, q), in [0,1], 1 = identical
///   chi_square:    symmetric sum of (p-q)^2/(p+q), 0 = identical
///   bhattacharyya: sqrt(1 - sum of sqrt(p q)), in [0,1], 0 = identical
/// Throws errc::shape_mismatch for differing bins/range and
/// errc::empty_histogram when either total is zero.
double compare_histograms(const Histogram& h1, const Histogram& h2,
                          HistogramMetric metric);

/// CSV rows "bin_lo,bin_hi,count" with a header line.
std::string histogram_to_csv(const Histogram& h);

} // namespace leafplan
