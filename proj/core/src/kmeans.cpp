#include "leafplan/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leafplan/detail/rng.hpp"

namespace leafplan {

namespace {

double squared_distance(std::span<const double> p, std::span<const double> q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double diff = p[i] - q[i];
        acc += diff * diff;
    }
    return acc;
}

FeatureMatrix kmeanspp_init(const FeatureMatrix& points, std::size_t k,
                            std::mt19937_64& rng) {
    const std::size_t n = points.rows;
    const std::size_t d = points.cols;

    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    std::vector<bool> is_chosen(n, false);

    auto pick_fallback = [&]() {
        for (std::size_t i = 0; i < n; ++i)
            if (!is_chosen[i])
                return i;
        return std::size_t{0};
    };

    chosen.push_back(detail::uniform_index(rng, n));
    is_chosen[chosen.back()] = true;

    std::vector<double> min_dist2(n);
    for (std::size_t i = 0; i < n; ++i)
        min_dist2[i] = squared_distance(points.row(i), points.row(chosen[0]));

    while (chosen.size() < k) {
        double total = 0.0;
        for (double v : min_dist2)
            total += v;

        std::size_t next;
        if (total > 0.0) {
            // Sample an index with probability proportional to its squared
            // distance from the nearest chosen center.
            const double u = detail::uniform_double(rng) * total;
            double cum = 0.0;
            next = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += min_dist2[i];
                if (u < cum) {
                    next = i;
                    break;
                }
            }
        } else {
            // Every point coincides with a chosen center; take the lowest
            // index still free.
            next = pick_fallback();
        }

        chosen.push_back(next);
        is_chosen[next] = true;
        for (std::size_t i = 0; i < n; ++i)
            min_dist2[i] = std::min(
                min_dist2[i], squared_distance(points.row(i), points.row(next)));
    }

    FeatureMatrix centroids(k, d);
    for (std::size_t j = 0; j < k; ++j)
        std::copy_n(points.row(chosen[j]).data(), d, centroids.row(j).data());
    return centroids;
}

// Nearest-centroid assignment, ties toward the lowest centroid index.
// Returns the total within-cluster squared distance, accumulated in
// ascending point order.
double assign_labels(const FeatureMatrix& points, const FeatureMatrix& centroids,
                     std::vector<std::size_t>& labels) {
    double inertia = 0.0;
    for (std::size_t i = 0; i < points.rows; ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < centroids.rows; ++j) {
            const double d2 = squared_distance(points.row(i), centroids.row(j));
            if (d2 < best) {
                best = d2;
                best_j = j;
            }
        }
        labels[i] = best_j;
        inertia += best;
    }
    return inertia;
}

struct LloydRun {
    FeatureMatrix centroids;
    std::vector<std::size_t> labels;
    double inertia = 0.0;
    std::size_t iterations = 0;
};

LloydRun lloyd(const FeatureMatrix& points, const FeatureMatrix& init,
               const KMeansConfig& cfg, std::size_t restart) {
    const std::size_t n = points.rows;
    const std::size_t k = init.rows;
    const std::size_t d = points.cols;

    LloydRun run;
    run.centroids = init;
    run.labels.assign(n, 0);
    run.inertia = assign_labels(points, run.centroids, run.labels);
    if (cfg.iteration_observer)
        cfg.iteration_observer(restart, 0, run.inertia);

    for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
        // Update step: cluster means, accumulated in ascending point order.
        FeatureMatrix next(k, d);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto row = points.row(i);
            auto c = next.row(run.labels[i]);
            for (std::size_t j = 0; j < d; ++j)
                c[j] += row[j];
            ++counts[run.labels[i]];
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] == 0)
                continue;
            auto c = next.row(j);
            for (std::size_t f = 0; f < d; ++f)
                c[f] /= static_cast<double>(counts[j]);
        }

        // Empty clusters re-seed at the point farthest from its own (new)
        // centroid; each repair consumes that point so two empty clusters
        // cannot land on the same spot.
        std::vector<double> repair_dist2;
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] != 0)
                continue;
            if (repair_dist2.empty()) {
                repair_dist2.resize(n);
                for (std::size_t i = 0; i < n; ++i)
                    repair_dist2[i] = counts[run.labels[i]] == 0
                                          ? -1.0
                                          : squared_distance(
                                                points.row(i),
                                                next.row(run.labels[i]));
            }
            std::size_t farthest = 0;
            double best = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (repair_dist2[i] > best) {
                    best = repair_dist2[i];
                    farthest = i;
                }
            }
            std::copy_n(points.row(farthest).data(), d, next.row(j).data());
            repair_dist2[farthest] = -1.0;
        }

        double displacement = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            displacement = std::max(
                displacement,
                std::sqrt(squared_distance(run.centroids.row(j), next.row(j))));

        run.centroids = std::move(next);
        run.inertia = assign_labels(points, run.centroids, run.labels);
        run.iterations = iter;
        if (cfg.iteration_observer)
            cfg.iteration_observer(restart, iter, run.inertia);

        if (displacement <= cfg.tol)
            break;
    }
    return run;
}

} // namespace

double euclidean_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size() || p.empty())
        throw Error(errc::dimension_mismatch,
                    "euclidean_distance: dimensions differ or are zero");
    return std::sqrt(squared_distance(p, q));
}

std::pair<FeatureMatrix, std::vector<std::pair<double, double>>>
standardize(const FeatureMatrix& features) {
    const std::size_t n = features.rows;
    const std::size_t d = features.cols;
    if (n == 0)
        throw Error(errc::empty_input, "standardize: no rows");

    std::vector<std::pair<double, double>> params(d);
    FeatureMatrix out(n, d);

    for (std::size_t c = 0; c < d; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            sum += features.at(r, c);
        const double mean = sum / static_cast<double>(n);

        double var = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double diff = features.at(r, c) - mean;
            var += diff * diff;
        }
        const double stddev = std::sqrt(var / static_cast<double>(n));
        params[c] = {mean, stddev};

        for (std::size_t r = 0; r < n; ++r)
            out.at(r, c) =
                stddev > 0.0 ? (features.at(r, c) - mean) / stddev : 0.0;
    }
    return {std::move(out), std::move(params)};
}

std::vector<double> KMeansModel::centroid_original_units(std::size_t cluster) const {
    auto row = centroids.row(cluster);
    std::vector<double> out(row.begin(), row.end());
    if (standardization_params) {
        for (std::size_t c = 0; c < out.size(); ++c) {
            const auto& [mean, stddev] = (*standardization_params)[c];
            out[c] = out[c] * stddev + mean;
        }
    }
    return out;
}

KMeansModel kmeans_fit(const FeatureMatrix& features, const KMeansConfig& config) {
    const std::size_t n = features.rows;
    const std::size_t d = features.cols;

    if (config.k < 1 || config.restarts < 1 || config.max_iters < 1 ||
        config.tol < 0.0 || d < 1)
        throw Error(errc::invalid_argument, "kmeans_fit: bad configuration");
    if (n < config.k)
        throw Error(errc::too_few_points, "kmeans_fit: fewer points than clusters");
    for (double v : features.data)
        if (!std::isfinite(v))
            throw Error(errc::non_finite_input, "kmeans_fit: non-finite feature");
    if (config.initial_centroids &&
        (config.initial_centroids->rows != config.k ||
         config.initial_centroids->cols != d))
        throw Error(errc::invalid_argument,
                    "kmeans_fit: initial centroids must be k x d");

    const FeatureMatrix* work = &features;
    FeatureMatrix standardized;
    std::vector<std::pair<double, double>> params;
    if (config.standardize) {
        std::tie(standardized, params) = standardize(features);
        work = &standardized;
    }

    // With explicit initial centroids every restart is the same run.
    const std::size_t runs = config.initial_centroids ? 1 : config.restarts;

    std::uint64_t seed_state = config.seed;
    LloydRun best;
    bool have_best = false;
    for (std::size_t r = 0; r < runs; ++r) {
        const std::uint64_t restart_seed = detail::splitmix64(seed_state);
        FeatureMatrix init;
        if (config.initial_centroids) {
            init = *config.initial_centroids;
        } else {
            std::mt19937_64 rng(restart_seed);
            init = kmeanspp_init(*work, config.k, rng);
        }
        LloydRun run = lloyd(*work, init, config, r);
        if (!have_best || run.inertia < best.inertia) {
            best = std::move(run);
            have_best = true;
        }
    }

    KMeansModel model;
    model.centroids = std::move(best.centroids);
    model.labels = std::move(best.labels);
    model.inertia = best.inertia;
    model.iterations_run = best.iterations;
    if (config.standardize)
        model.standardization_params = std::move(params);
    return model;
}

} // namespace leafplan
