#include <algorithm>
#include <array>
#include <cmath>

#include "content_grid.hpp"
#include "fractalab/errors.hpp"
#include "fractalab/thermo.hpp"

namespace fractalab::detail {

namespace {

struct Node {
    Cell coords;
    double cost = 0.0;
    bool self = true;
    std::vector<std::uint32_t> children;
};

Cell parent_of(const Cell& c) {
    return {c[0] >> 1, c[1] >> 1, c[2] >> 1};
}

}  // namespace

ContentEstimate content_from_cells(std::vector<Cell> cells, int dim, const Vec& origin, double floor, double s,
                                   const Vec& bbox_center, double set_diameter) {
    if (cells.empty()) throw InvalidArgumentError("content: empty input");
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    std::vector<std::vector<Node>> levels(1);
    const double floor_cost = std::pow(floor, s);
    for (const auto& c : cells) levels[0].push_back({c, floor_cost, true, {}});

    double side = floor;
    while (levels.back().size() > 1) {
        const auto& kids = levels.back();
        std::vector<std::pair<Cell, std::uint32_t>> keyed(kids.size());
        for (std::size_t i = 0; i < kids.size(); ++i) keyed[i] = {parent_of(kids[i].coords), static_cast<std::uint32_t>(i)};
        std::sort(keyed.begin(), keyed.end());
        side *= 2.0;
        const double self_cost = std::pow(side, s);
        std::vector<Node> up;
        for (std::size_t i = 0; i < keyed.size();) {
            Node p{keyed[i].first, 0.0, true, {}};
            double sum = 0.0;
            for (; i < keyed.size() && keyed[i].first == p.coords; ++i) {
                p.children.push_back(keyed[i].second);
                sum += kids[keyed[i].second].cost;
            }
            p.self = self_cost <= sum;
            p.cost = p.self ? self_cost : sum;
            up.push_back(std::move(p));
        }
        levels.push_back(std::move(up));
    }

    ContentEstimate est;
    est.s = s;
    est.method = "grid-greedy";
    est.scale_floor = floor;
    est.set_diameter = set_diameter;
    const double whole = std::pow(set_diameter, s);
    const Node& top = levels.back().front();
    if (whole <= top.cost) {
        est.value = whole;
        est.cover.push_back({bbox_center, set_diameter});
        return est;
    }
    est.value = top.cost;

    auto emit = [&](auto&& self, std::size_t level, std::size_t index) -> void {
        const Node& n = levels[level][index];
        if (n.self || level == 0) {
            const double l = std::ldexp(floor, static_cast<int>(level));
            Vec c(dim);
            for (int a = 0; a < dim; ++a) c[a] = origin[a] + (static_cast<double>(n.coords[static_cast<std::size_t>(a)]) + 0.5) * l;
            est.cover.push_back({std::move(c), l});
            return;
        }
        for (auto k : n.children) self(self, level - 1, k);
    };
    emit(emit, levels.size() - 1, 0);
    return est;
}

Cell cell_of(std::span<const double> p, const Vec& origin, double floor) {
    Cell c{0, 0, 0};
    for (std::size_t a = 0; a < p.size(); ++a)
        c[a] = static_cast<std::int64_t>(std::floor((p[a] - origin[static_cast<Eigen::Index>(a)]) / floor));
    return c;
}

}  // namespace fractalab::detail

namespace fractalab {

namespace {

struct Extent {
    Vec lo, hi;
    Vec center() const { return 0.5 * (lo + hi); }
    double diameter() const { return (hi - lo).maxCoeff(); }
};

Vec grid_origin(const ContentOptions& opts, const Vec& lo) {
    Vec o = opts.origin ? *opts.origin : lo;
    return o.array() - opts.shift * opts.scale_floor;
}

void check_options(double s, const ContentOptions& opts) {
    if (!(s >= 0.0)) throw InvalidArgumentError("content: s must be non-negative");
    if (!(opts.scale_floor > 0.0)) throw InvalidArgumentError("content: scale_floor must be positive");
}

}  // namespace

ContentEstimate hausdorff_content_upper(const PointCloud& points, double s, const ContentOptions& opts) {
    check_options(s, opts);
    if (points.size() == 0) throw InvalidArgumentError("hausdorff_content_upper: empty input");
    Extent ext{points.vec(0), points.vec(0)};
    for (std::size_t i = 1; i < points.size(); ++i) {
        ext.lo = ext.lo.cwiseMin(points.vec(i));
        ext.hi = ext.hi.cwiseMax(points.vec(i));
    }
    const Vec origin = grid_origin(opts, ext.lo);
    std::vector<detail::Cell> cells;
    cells.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) cells.push_back(detail::cell_of(points.point(i), origin, opts.scale_floor));
    return detail::content_from_cells(std::move(cells), points.dim, origin, opts.scale_floor, s, ext.center(), ext.diameter());
}

ContentEstimate hausdorff_content_upper(const PointCloud& centers, std::span<const double> radii, double s,
                                        const ContentOptions& opts) {
    check_options(s, opts);
    if (centers.size() == 0) throw InvalidArgumentError("hausdorff_content_upper: empty input");
    if (centers.size() != radii.size()) throw InvalidArgumentError("hausdorff_content_upper: centers and radii differ in length");
    const int d = centers.dim;
    Extent ext{centers.vec(0).array() - radii[0], centers.vec(0).array() + radii[0]};
    for (std::size_t i = 1; i < centers.size(); ++i) {
        ext.lo = ext.lo.cwiseMin(Vec(centers.vec(i).array() - radii[i]));
        ext.hi = ext.hi.cwiseMax(Vec(centers.vec(i).array() + radii[i]));
    }
    const Vec origin = grid_origin(opts, ext.lo);
    const double l = opts.scale_floor;
    std::vector<detail::Cell> cells;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const auto c = centers.point(i);
        std::array<std::int64_t, 3> lo{0, 0, 0}, hi{0, 0, 0};
        for (int a = 0; a < d; ++a) {
            lo[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(std::floor((c[static_cast<std::size_t>(a)] - radii[i] - origin[a]) / l));
            hi[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(std::floor((c[static_cast<std::size_t>(a)] + radii[i] - origin[a]) / l));
        }
        // Cells in the bounding cube of the ball that the ball actually meets.
        for (auto x = lo[0]; x <= hi[0]; ++x)
            for (auto y = lo[1]; y <= hi[1]; ++y)
                for (auto z = lo[2]; z <= hi[2]; ++z) {
                    const detail::Cell cell{x, y, z};
                    double dist2 = 0.0;
                    for (int a = 0; a < d; ++a) {
                        const double cmin = origin[a] + static_cast<double>(cell[static_cast<std::size_t>(a)]) * l;
                        const double q = std::clamp(c[static_cast<std::size_t>(a)], cmin, cmin + l);
                        dist2 += (q - c[static_cast<std::size_t>(a)]) * (q - c[static_cast<std::size_t>(a)]);
                    }
                    if (dist2 <= radii[i] * radii[i]) cells.push_back(cell);
                }
    }
    return detail::content_from_cells(std::move(cells), d, origin, l, s, ext.center(), ext.diameter());
}

ContentEstimate cylinder_cover_content(const IfsSystem& system, double s, int k) {
    if (!(s >= 0.0)) throw InvalidArgumentError("cylinder_cover_content: s must be non-negative");
    if (k < 0) throw InvalidArgumentError("cylinder_cover_content: negative depth");
    const auto logd = log_cylinder_diameters(system, k);
    ContentEstimate est;
    est.s = s;
    est.method = "cylinder-cover";
    est.set_diameter = system.attractor_diameter();
    double sum = 0.0, comp = 0.0;
    for (std::size_t r = 0; r < logd.size(); ++r) {
        const double term = std::exp(s * logd[r]);
        const double t = sum + term;
        comp += std::abs(sum) >= term ? (sum - t) + term : (term - t) + sum;
        sum = t;
        const Word w = Word::from_rank(r, static_cast<std::size_t>(k), system.size());
        est.cover.push_back({cylinder_geometry(system, w).anchor_image, std::exp(logd[r])});
    }
    est.value = sum + comp;
    return est;
}

}  // namespace fractalab
