#include <omp.h>

#include <algorithm>

#include "fractalab/errors.hpp"
#include "fractalab/kernels.hpp"

namespace fractalab::kernels {

namespace {

int distinct_at(std::span<const double> x, const PointCloud& centers, std::span<const double> radii,
                std::span<const int> ids, double probe, std::vector<int>& scratch) {
    scratch.clear();
    for (std::size_t j = 0; j < centers.size(); ++j) {
        const auto c = centers.point(j);
        double s = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) s += (x[a] - c[a]) * (x[a] - c[a]);
        const double reach = radii[j] + probe;
        if (s <= reach * reach * (1.0 + 1e-12)) scratch.push_back(ids[j]);
    }
    std::sort(scratch.begin(), scratch.end());
    return static_cast<int>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

void check_inputs(const PointCloud& candidates, const PointCloud& centers, std::span<const double> radii,
                  std::span<const int> ids) {
    if (centers.size() != radii.size() || centers.size() != ids.size())
        throw InvalidArgumentError("max_distinct_overlap: region arrays differ in length");
    if (candidates.dim != centers.dim) throw InvalidArgumentError("max_distinct_overlap: dimension mismatch");
}

}  // namespace

OverlapMax max_distinct_overlap(const PointCloud& candidates, const PointCloud& region_centers,
                                std::span<const double> region_radii, std::span<const int> map_ids,
                                double probe_radius) {
    check_inputs(candidates, region_centers, region_radii, map_ids);
    const auto n = static_cast<std::int64_t>(candidates.size());
    std::vector<int> counts(candidates.size());
#pragma omp parallel
    {
        std::vector<int> scratch;
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            counts[k] = distinct_at(candidates.point(k), region_centers, region_radii, map_ids, probe_radius, scratch);
        }
    }
    OverlapMax best;
    // First maximum in candidate order, as in the serial scan.
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > best.count) best = {counts[i], i};
    }
    return best;
}

namespace serial {

OverlapMax max_distinct_overlap(const PointCloud& candidates, const PointCloud& region_centers,
                                std::span<const double> region_radii, std::span<const int> map_ids,
                                double probe_radius) {
    check_inputs(candidates, region_centers, region_radii, map_ids);
    OverlapMax best;
    std::vector<int> scratch;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const int c = distinct_at(candidates.point(i), region_centers, region_radii, map_ids, probe_radius, scratch);
        if (c > best.count) best = {c, i};
    }
    return best;
}

}  // namespace serial

}  // namespace fractalab::kernels
