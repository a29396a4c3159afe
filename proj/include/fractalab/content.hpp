#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fractalab/ifs.hpp"

namespace fractalab {

/// Axis-aligned cube; its sup-norm diameter is `side`.
struct CoverBox {
    Vec center;
    double side = 0.0;
};

struct ContentEstimate {
    double s = 0.0;
    double value = 0.0;  ///< sum of side^s over the cover
    std::vector<CoverBox> cover;
    std::string method;  ///< "grid-greedy" or "cylinder-cover"
    double set_diameter = 0.0;  ///< sup-norm diameter of the input
    double scale_floor = 0.0;
};

struct ContentOptions {
    double scale_floor = 1e-3;
    /// Grid offset in units of the floor cell, applied on every axis.
    double shift = 0.0;
    /// Grid corner; defaults to the lower corner of the input's bounding box.
    std::optional<Vec> origin;
};

/// Upper bound on H^s_inf. The input is rasterised into cells of side
/// scale_floor; dyadic parents then replace their children whenever
/// side^s is no larger than the children's total. The single cube around
/// the whole input is also considered, so value <= |A|^s.
ContentEstimate hausdorff_content_upper(const PointCloud& points, double s, const ContentOptions& opts);
ContentEstimate hausdorff_content_upper(const PointCloud& centers, std::span<const double> radii, double s,
                                        const ContentOptions& opts);

/// The level-k cylinder cover: sum over |w| = k of |f_w(K)|^s.
ContentEstimate cylinder_cover_content(const IfsSystem& system, double s, int k);

struct Region {
    Vec center;
    double radius = 0.0;  ///< closed ball
};

struct EssentialContentEstimate {
    double s = 0.0;
    double eta = 0.0;
    double grid_scale = 0.0;
    double value = 0.0;
    double plain_value = 0.0;  ///< same grid and sample, nothing discarded
    double retained_mass = 1.0;
    std::size_t discarded_boxes = 0;
    std::size_t occupied_boxes = 0;
    std::size_t sample_in_region = 0;
    ContentEstimate content;
};

/// The chaos-game measure restricted to the region is binned on a grid of
/// side grid_scale anchored at the region's lower corner. Boxes are sorted
/// by mass (ascending) and the longest prefix of total mass <= eta is
/// dropped; the content bound is computed on what remains. Throws
/// ZeroMassError when no sample point lands in the region.
EssentialContentEstimate essential_content_estimate(const IfsSystem& system, std::span<const double> weights,
                                                    const Region& region, double s, double eta, double grid_scale,
                                                    std::size_t n_sample, std::uint64_t seed);

/// One cover together with the estimates it produced.
struct CoverCase {
    std::vector<double> diameters;
    double set_diameter = 0.0;
    double s = 0.0;
    double value = 0.0;        ///< essential (or plain) content estimate at s
    double plain_value = 0.0;  ///< plain content estimate at s
};

struct CalculusReport {
    std::size_t checks = 0;
    std::vector<std::string> failures;
    bool ok() const noexcept { return failures.empty(); }
};

/// Per-cover checks:
///  - sum |L|^s is non-increasing over s_grid (diameters <= 1);
///  - value <= min(|A|^s, plain value);
///  - sum |L|^{s/delta} >= (sum |L|^s)^{1/delta} for every delta >= 1 given.
CalculusReport content_calculus_check(std::span<const CoverCase> cases, std::span<const double> s_grid,
                                      std::span<const double> deltas);

}  // namespace fractalab
