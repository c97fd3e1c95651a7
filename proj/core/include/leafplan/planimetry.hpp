#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leafplan/colorspace.hpp"
#include "leafplan/image.hpp"
#include "leafplan/kmeans.hpp"

namespace leafplan {

enum class BackgroundMode { auto_detect, white, black };

struct BackgroundOptions {
    BackgroundMode mode = BackgroundMode::auto_detect;
    double lightness_tol = 15.0; // band half-width around the reference L*
    double chroma_max = 12.0;    // background pixels are near-neutral

    /// Fixed-threshold override: extract the foreground by grayscale
    /// binarization at this level instead of the L* band rule. Polarity is
    /// decided by which side of the threshold the border falls on.
    std::optional<int> fixed_threshold;
};

/// Classify background vs. leaf. Background pixels have L* within
/// `lightness_tol` of the reference (median border L* in auto mode, 100 for
/// white, 0 for black) and chroma below `chroma_max`; the mask holds the
/// complement. Throws errc::empty_foreground when nothing survives.
BinaryMask remove_background(const RgbImage& img, const BackgroundOptions& opts = {});

enum class ClusterRole { unaffected, affected, background };

struct SegmentationResult {
    std::vector<BinaryMask> cluster_masks; // one per cluster, pairwise disjoint
    std::vector<ClusterRole> roles;        // cluster index -> role
    KMeansModel model;
    std::vector<std::size_t> row_to_pixel; // feature row -> pixel index
    BinaryMask foreground;                 // what was fed to clustering
    bool low_contrast = false;
};

/// Cluster the foreground's (a*, b*) pixels into k groups and assign roles:
/// the cluster with the greatest centroid a* is `affected` (lesion browns and
/// yellows sit at a* >= 0), the least is `unaffected`; with k > 2 the middle
/// clusters side with `affected` when their centroid a* >= 0. low_contrast is
/// raised when the extreme centroids are closer than 5 in a*b* or the affected
/// centroid still has a* < 0.
SegmentationResult segment_leaf(const RgbImage& img, std::size_t k,
                                const KMeansConfig& cfg,
                                const BackgroundOptions& bg = {});

struct PlanimetryReport {
    std::uint64_t wp = 0;  // unaffected pixels
    std::uint64_t wp1 = 0; // affected pixels
    std::uint64_t tp = 0;  // wp + wp1
    double damage_percent = 0.0;

    std::optional<double> scale_mm2_per_px;
    std::optional<double> leaf_area_mm2;
    std::optional<double> affected_area_mm2;
    std::optional<double> unaffected_area_mm2;
};

/// tp = wp + wp1, damage_percent = 100 * wp1 / tp. Physical areas are filled
/// iff a scale is given. Throws errc::empty_leaf when wp + wp1 = 0.
PlanimetryReport planimetry_report(std::uint64_t wp, std::uint64_t wp1,
                                   std::optional<double> scale_mm2_per_px = {});

struct GridEstimate {
    std::size_t cell_px = 1;
    std::size_t covered_cells = 0;
    std::uint64_t area_px = 0; // covered_cells * cell_px^2
};

/// Grid-paper area rule: tile the mask into cell_px-wide cells anchored at
/// (0,0) and count a cell when its white fraction over the full nominal cell
/// area is strictly greater than one half. Edge cells keep their nominal
/// area, so a partially-in-frame cell can fail the majority test.
GridEstimate grid_area(const BinaryMask& mask, std::size_t cell_px);

struct PipelineConfig {
    std::size_t k = 2;
    KMeansConfig kmeans{.k = 2, .seed = 42, .restarts = 10};
    BackgroundOptions background;
    std::size_t grid_cell_px = 4;
    std::optional<double> scale_mm2_per_px;
};

struct AnalysisResult {
    PlanimetryReport report;
    SegmentationResult segmentation;
    GridEstimate leaf_grid;                // whole-leaf mask, graphical method
    std::vector<GridEstimate> cluster_grids; // one per cluster mask
};

/// Whole pipeline: remove_background -> segment_leaf -> per-role pixel counts
/// -> planimetry_report, plus the grid estimate of the whole-leaf mask as the
/// independent graphical-method area. Errors from any stage are rethrown with
/// the stage name attached.
AnalysisResult analyze(const RgbImage& img, const PipelineConfig& cfg = {});

/// Original image with affected pixels blended half-and-half with pure red.
RgbImage render_overlay(const RgbImage& img, const SegmentationResult& seg);

} // namespace leafplan
