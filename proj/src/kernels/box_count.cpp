#include <omp.h>

#include <algorithm>
#include <cmath>

#include "fractalab/errors.hpp"
#include "fractalab/kernels.hpp"

namespace fractalab::kernels {

namespace {

// A run of cells [lo, hi] along the last axis inside one row; `row` packs
// the cell indices of the leading axes.
struct Segment {
    std::uint64_t row;
    std::int64_t lo;
    std::int64_t hi;
    auto operator<=>(const Segment&) const = default;
};

constexpr std::int64_t kRowBits = 30;
constexpr std::int64_t kRowOffset = std::int64_t{1} << (kRowBits - 1);

std::uint64_t pack_row(const std::int64_t* idx, int n) {
    std::uint64_t key = 0;
    for (int a = 0; a < n; ++a) {
        const std::int64_t v = idx[a] + kRowOffset;
        if (v < 0 || v >= (std::int64_t{1} << kRowBits)) throw InvalidArgumentError("box_count: grid too fine for cell packing");
        key = (key << kRowBits) | static_cast<std::uint64_t>(v);
    }
    return key;
}

double axis_gap(double c, double cell_lo, double cell_hi) {
    if (c < cell_lo) return cell_lo - c;
    if (c > cell_hi) return c - cell_hi;
    return 0.0;
}

// Emits, for one ball, the segment of cells met in every row it touches.
template <class Out>
void ball_segments(std::span<const double> c, double r, double eps, std::span<const double> origin, double shift,
                   Out&& out) {
    const int d = static_cast<int>(c.size());
    const int lead = d - 1;
    auto cell_of = [&](double x, int axis) { return static_cast<std::int64_t>(std::floor((x - origin[axis]) / eps + shift)); };
    std::int64_t lo[kMaxDim], hi[kMaxDim], idx[kMaxDim];
    for (int a = 0; a < lead; ++a) {
        lo[a] = cell_of(c[a] - r, a);
        hi[a] = cell_of(c[a] + r, a);
        idx[a] = lo[a];
    }
    for (;;) {
        double gap2 = 0.0;
        for (int a = 0; a < lead; ++a) {
            const double cell_lo = origin[a] + (static_cast<double>(idx[a]) - shift) * eps;
            const double g = axis_gap(c[a], cell_lo, cell_lo + eps);
            gap2 += g * g;
        }
        if (gap2 <= r * r) {
            const double h = std::sqrt(r * r - gap2);
            out(Segment{pack_row(idx, lead), cell_of(c[lead] - h, lead), cell_of(c[lead] + h, lead)});
        }
        int a = lead - 1;
        while (a >= 0 && idx[a] == hi[a]) {
            idx[a] = lo[a];
            --a;
        }
        if (a < 0) break;
        ++idx[a];
    }
}

std::size_t count_union(std::vector<Segment>& segs) {
    std::sort(segs.begin(), segs.end());
    std::size_t total = 0;
    std::size_t i = 0;
    while (i < segs.size()) {
        const std::uint64_t row = segs[i].row;
        std::int64_t cur_lo = segs[i].lo, cur_hi = segs[i].hi;
        ++i;
        for (; i < segs.size() && segs[i].row == row; ++i) {
            if (segs[i].lo > cur_hi + 1) {
                total += static_cast<std::size_t>(cur_hi - cur_lo + 1);
                cur_lo = segs[i].lo;
                cur_hi = segs[i].hi;
            } else {
                cur_hi = std::max(cur_hi, segs[i].hi);
            }
        }
        total += static_cast<std::size_t>(cur_hi - cur_lo + 1);
    }
    return total;
}

void check_inputs(const PointCloud& centers, std::span<const double> radii, double eps, std::span<const double> origin) {
    if (!(eps > 0.0)) throw InvalidArgumentError("box_count: eps must be positive");
    if (centers.size() != radii.size()) throw InvalidArgumentError("box_count: centers/radii size mismatch");
    if (static_cast<int>(origin.size()) != centers.dim) throw InvalidArgumentError("box_count: origin dimension mismatch");
}

}  // namespace

std::size_t box_count(const PointCloud& centers, std::span<const double> radii, double eps,
                      std::span<const double> origin, double shift) {
    check_inputs(centers, radii, eps, origin);
    const auto n = static_cast<std::int64_t>(centers.size());
    std::vector<std::vector<Segment>> local(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
        auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const auto j = static_cast<std::size_t>(i);
            ball_segments(centers.point(j), radii[j], eps, origin, shift, [&](Segment s) { mine.push_back(s); });
        }
    }
    std::vector<Segment> all;
    std::size_t total = 0;
    for (const auto& v : local) total += v.size();
    all.reserve(total);
    for (auto& v : local) all.insert(all.end(), v.begin(), v.end());
    return count_union(all);
}

namespace serial {

std::size_t box_count(const PointCloud& centers, std::span<const double> radii, double eps,
                      std::span<const double> origin, double shift) {
    check_inputs(centers, radii, eps, origin);
    std::vector<Segment> all;
    for (std::size_t i = 0; i < centers.size(); ++i)
        ball_segments(centers.point(i), radii[i], eps, origin, shift, [&](Segment s) { all.push_back(s); });
    return count_union(all);
}

}  // namespace serial

}  // namespace fractalab::kernels
