#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "leafplan/matrix.hpp"

namespace leafplan {

struct KMeansConfig {
    std::size_t k = 2;
    std::size_t max_iters = 100;
    double tol = 1e-4;          // max centroid displacement that counts as converged
    std::uint64_t seed = 42;
    std::size_t restarts = 1;
    bool standardize = false;

    /// When set, every restart starts from these centroids instead of
    /// k-means++ seeding (rows = k, cols = feature dimension).
    std::optional<FeatureMatrix> initial_centroids;

    /// Observation hook: called as (restart, iteration, inertia) after every
    /// assignment pass. Purely diagnostic; has no effect on the result.
    std::function<void(std::size_t, std::size_t, double)> iteration_observer;
};

struct KMeansModel {
    FeatureMatrix centroids;         // k x d, in the space clustering ran in
    std::vector<std::size_t> labels; // length n, values in [0, k)
    double inertia = 0.0;            // total within-cluster squared distance
    std::size_t iterations_run = 0;

    /// Per-column (mean, stddev) recorded when config.standardize was on;
    /// centroids then live in standardized space and map back through these.
    std::optional<std::vector<std::pair<double, double>>> standardization_params;

    /// Centroid coordinates mapped back to the original feature units.
    std::vector<double> centroid_original_units(std::size_t cluster) const;
};

/** Euclidean distance between two points of equal dimension.
 *
 * Throws errc::dimension_mismatch when the spans differ in length.
 */
double euclidean_distance(std::span<const double> p, std::span<const double> q);

/** Column-wise standardization: subtract the column mean, divide by the
 * population standard deviation. Constant columns become all zeros and their
 * recorded stddev is 0.
 *
 * Returns the transformed matrix and the per-column (mean, stddev) pairs.
 */
std::pair<FeatureMatrix, std::vector<std::pair<double, double>>>
standardize(const FeatureMatrix& features);

/** Lloyd's k-means over `features` (rows = points).
 *
 * Runs `config.restarts` independent optimizations, each seeded by k-means++
 * from a per-restart substream of `config.seed`, and returns the model with
 * the smallest inertia (ties resolved toward the earlier restart). Within a
 * run, points assign to the nearest centroid (ties toward the lowest index),
 * centroids update to cluster means accumulated in ascending point order, and
 * iteration stops once the largest centroid displacement is <= config.tol or
 * max_iters is reached. A cluster left empty by assignment is re-seeded with
 * the point currently farthest from its own centroid.
 *
 * Identical (features, config) inputs produce a bitwise-identical model.
 *
 * Throws errc::too_few_points when n < k and errc::non_finite_input when any
 * feature is NaN or infinite.
 */
KMeansModel kmeans_fit(const FeatureMatrix& features, const KMeansConfig& config);

} // namespace leafplan
