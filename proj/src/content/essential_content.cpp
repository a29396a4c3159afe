#include <algorithm>
#include <map>

#include "content_grid.hpp"
#include "fractalab/errors.hpp"

namespace fractalab {

namespace {

ContentEstimate content_of(const std::vector<detail::Cell>& cells, int dim, const Vec& origin, double l, double s) {
    Vec lo(dim), hi(dim);
    for (int a = 0; a < dim; ++a) {
        std::int64_t mn = cells.front()[static_cast<std::size_t>(a)], mx = mn;
        for (const auto& c : cells) {
            mn = std::min(mn, c[static_cast<std::size_t>(a)]);
            mx = std::max(mx, c[static_cast<std::size_t>(a)]);
        }
        lo[a] = origin[a] + static_cast<double>(mn) * l;
        hi[a] = origin[a] + static_cast<double>(mx + 1) * l;
    }
    return detail::content_from_cells(cells, dim, origin, l, s, 0.5 * (lo + hi), (hi - lo).maxCoeff());
}

}  // namespace

EssentialContentEstimate essential_content_estimate(const IfsSystem& system, std::span<const double> weights,
                                                    const Region& region, double s, double eta, double grid_scale,
                                                    std::size_t n_sample, std::uint64_t seed) {
    if (!(eta >= 0.0 && eta <= 0.2)) throw InvalidArgumentError("essential_content_estimate: eta must lie in [0, 0.2]");
    if (!(grid_scale > 0.0)) throw InvalidArgumentError("essential_content_estimate: grid_scale must be positive");
    if (!(s >= 0.0)) throw InvalidArgumentError("essential_content_estimate: s must be non-negative");
    if (region.center.size() != system.dim() || !(region.radius > 0.0))
        throw InvalidArgumentError("essential_content_estimate: bad region");

    const PointCloud sample = attractor_sample(system, weights, n_sample, seed);
    const Vec origin = region.center.array() - region.radius;
    std::map<detail::Cell, std::size_t> mass;
    std::size_t inside = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if ((sample.vec(i) - region.center).norm() > region.radius) continue;
        ++inside;
        ++mass[detail::cell_of(sample.point(i), origin, grid_scale)];
    }
    if (inside == 0) throw ZeroMassError("essential_content_estimate: no sample mass in the region");

    std::vector<std::pair<std::size_t, detail::Cell>> by_mass;
    for (const auto& [cell, count] : mass) by_mass.emplace_back(count, cell);
    std::sort(by_mass.begin(), by_mass.end());

    // Longest light prefix with total mass <= eta.
    const double budget = eta * static_cast<double>(inside);
    std::size_t dropped = 0, dropped_mass = 0;
    while (dropped < by_mass.size() && static_cast<double>(dropped_mass + by_mass[dropped].first) <= budget) {
        dropped_mass += by_mass[dropped].first;
        ++dropped;
    }
    if (dropped == by_mass.size()) {
        --dropped;
        dropped_mass -= by_mass[dropped].first;
    }

    std::vector<detail::Cell> all, kept;
    for (std::size_t i = 0; i < by_mass.size(); ++i) {
        all.push_back(by_mass[i].second);
        if (i >= dropped) kept.push_back(by_mass[i].second);
    }

    EssentialContentEstimate est;
    est.s = s;
    est.eta = eta;
    est.grid_scale = grid_scale;
    est.sample_in_region = inside;
    est.occupied_boxes = by_mass.size();
    est.discarded_boxes = dropped;
    est.retained_mass = 1.0 - static_cast<double>(dropped_mass) / static_cast<double>(inside);
    est.content = content_of(kept, system.dim(), origin, grid_scale, s);
    est.value = est.content.value;
    est.plain_value = dropped ? content_of(all, system.dim(), origin, grid_scale, s).value : est.value;
    return est;
}

}  // namespace fractalab
