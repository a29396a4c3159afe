#include <omp.h>

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "fractalab/errors.hpp"
#include "fractalab/kernels.hpp"

namespace fractalab::kernels {

namespace {

double dist2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return s;
}

// Closed intervals merged into disjoint sorted runs.
std::vector<std::pair<double, double>> merged_intervals(const PointCloud& centers, std::span<const double> radii) {
    std::vector<std::pair<double, double>> iv(centers.size());
    for (std::size_t i = 0; i < iv.size(); ++i) iv[i] = {centers.coords[i] - radii[i], centers.coords[i] + radii[i]};
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<double, double>> out;
    for (const auto& [a, b] : iv) {
        if (!out.empty() && a <= out.back().second) out.back().second = std::max(out.back().second, b);
        else out.emplace_back(a, b);
    }
    return out;
}

struct CellHash {
    std::size_t operator()(const std::array<std::int64_t, kMaxDim>& k) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 0x100000001b3ULL;
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

double covered_fraction(const PointCloud& points, const PointCloud& centers, std::span<const double> radii) {
    if (centers.size() != radii.size()) throw InvalidArgumentError("covered_fraction: centers/radii size mismatch");
    if (points.size() == 0) return 0.0;
    const auto n = static_cast<std::int64_t>(points.size());
    std::int64_t hits = 0;

    if (points.dim == 1) {
        const auto runs = merged_intervals(centers, radii);
#pragma omp parallel for reduction(+ : hits) schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const double x = points.coords[static_cast<std::size_t>(i)];
            auto it = std::upper_bound(runs.begin(), runs.end(), std::make_pair(x, std::numeric_limits<double>::infinity()));
            if (it != runs.begin() && x <= std::prev(it)->second) ++hits;
        }
        return static_cast<double>(hits) / static_cast<double>(n);
    }

    // Uniform hash grid with cell side = largest radius; a point only needs
    // the balls registered in its own and adjacent cells.
    const int d = points.dim;
    double cell = 0.0;
    for (double r : radii) cell = std::max(cell, r);
    if (cell <= 0.0) cell = 1.0;
    std::unordered_map<std::array<std::int64_t, kMaxDim>, std::vector<std::size_t>, CellHash> grid;
    auto key_of = [&](std::span<const double> p) {
        std::array<std::int64_t, kMaxDim> k{};
        for (int a = 0; a < d; ++a) k[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(std::floor(p[static_cast<std::size_t>(a)] / cell));
        return k;
    };
    for (std::size_t j = 0; j < centers.size(); ++j) grid[key_of(centers.point(j))].push_back(j);

#pragma omp parallel for reduction(+ : hits) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto p = points.point(static_cast<std::size_t>(i));
        const auto base = key_of(p);
        bool hit = false;
        std::array<int, kMaxDim> off{};
        for (int a = 0; a < d; ++a) off[static_cast<std::size_t>(a)] = -1;
        while (!hit) {
            auto k = base;
            for (int a = 0; a < d; ++a) k[static_cast<std::size_t>(a)] += off[static_cast<std::size_t>(a)];
            if (auto it = grid.find(k); it != grid.end()) {
                for (std::size_t j : it->second) {
                    if (dist2(p, centers.point(j)) <= radii[j] * radii[j]) {
                        hit = true;
                        break;
                    }
                }
            }
            int a = 0;
            while (a < d && off[static_cast<std::size_t>(a)] == 1) off[static_cast<std::size_t>(a++)] = -1;
            if (a == d) break;
            ++off[static_cast<std::size_t>(a)];
        }
        if (hit) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

namespace serial {

double covered_fraction(const PointCloud& points, const PointCloud& centers, std::span<const double> radii) {
    if (centers.size() != radii.size()) throw InvalidArgumentError("covered_fraction: centers/radii size mismatch");
    if (points.size() == 0) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < centers.size(); ++j) {
            if (dist2(points.point(i), centers.point(j)) <= radii[j] * radii[j]) {
                ++hits;
                break;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(points.size());
}

}  // namespace serial

}  // namespace fractalab::kernels
