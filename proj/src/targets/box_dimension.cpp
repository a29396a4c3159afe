#include <algorithm>
#include <cmath>

#include "fractalab/errors.hpp"
#include "fractalab/kernels.hpp"
#include "fractalab/targets.hpp"

namespace fractalab {

namespace {

struct Fit {
    double slope = 0.0;
    double stderr_ = 0.0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Fit f;
    f.slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - my - f.slope * (x[i] - mx);
        rss += r * r;
    }
    f.stderr_ = x.size() > 2 ? std::sqrt(rss / (n - 2.0) / sxx) : 0.0;
    return f;
}

// Deepest usable generation: smallest largest-radius that is still >= eps.
int pick_generation(const std::vector<double>& max_radius, double eps) {
    int best = -1;
    for (std::size_t g = 0; g < max_radius.size(); ++g) {
        if (max_radius[g] < eps) continue;
        if (best < 0 || max_radius[g] <= max_radius[static_cast<std::size_t>(best)]) best = static_cast<int>(g);
    }
    return best;
}

}  // namespace

BoxDimensionEstimate limsup_box_dimension(const TargetExperiment& exp, const IfsSystem& system,
                                          std::span<const double> eps_ladder, std::size_t generation_offset) {
    if (exp.generations.size() < 4) throw InvalidArgumentError("limsup_box_dimension: need at least 4 generations");
    if (eps_ladder.empty()) throw InvalidArgumentError("limsup_box_dimension: empty eps ladder");

    std::vector<double> max_radius;
    double finest = std::numeric_limits<double>::infinity();
    for (const auto& g : exp.generations) {
        max_radius.push_back(g.max_radius());
        for (double r : g.radii) finest = std::min(finest, r);
    }
    for (double e : eps_ladder)
        if (!(e > 0.0) || e < finest * (1.0 - 1e-12))
            throw InvalidArgumentError("limsup_box_dimension: eps below the finest ball radius");

    const BoundingBall& ball = system.bounding_ball();
    std::vector<double> origin(static_cast<std::size_t>(system.dim()));
    for (int a = 0; a < system.dim(); ++a) origin[static_cast<std::size_t>(a)] = ball.center[a] - ball.radius;

    BoxDimensionEstimate est;
    for (double eps : eps_ladder) {
        const int nearest = pick_generation(max_radius, eps);
        if (nearest < 0) continue;
        const auto g = static_cast<std::size_t>(nearest) + generation_offset;
        if (g >= exp.generations.size()) continue;
        const Generation& gen = exp.generations[g];
        const std::size_t n = std::max(kernels::box_count(gen.centers, gen.radii, eps, origin, 0.0),
                                       kernels::box_count(gen.centers, gen.radii, eps, origin, 0.5));
        if (n > 0) est.curve.push_back({eps, n, static_cast<int>(g)});
    }
    if (est.curve.size() < 5)
        throw InsufficientScalesError("limsup_box_dimension: " + std::to_string(est.curve.size()) +
                                      " usable scales, need 3 after dropping the two edge scales");

    // Edge scales are dropped: the coarsest sees the whole ball family at once,
    // the finest is closest to the ball radii themselves.
    std::vector<double> x, y;
    for (std::size_t i = 1; i + 1 < est.curve.size(); ++i) {
        x.push_back(std::log(1.0 / est.curve[i].eps));
        y.push_back(std::log(static_cast<double>(est.curve[i].count)));
    }
    const Fit f = least_squares(x, y);
    est.slope = f.slope;
    est.half_width = 2.0 * f.stderr_;
    est.value = std::clamp(f.slope, 0.0, static_cast<double>(system.dim()));
    est.scales_used = x.size();
    return est;
}

std::vector<Stabilization> stabilization_report(const TargetExperiment& exp, const IfsSystem& system,
                                                std::span<const double> eps_ladder) {
    std::vector<Stabilization> out;
    for (int offset = 0; offset <= 2; ++offset) {
        try {
            const auto e = limsup_box_dimension(exp, system, eps_ladder, static_cast<std::size_t>(offset));
            out.push_back({offset, e.value, e.half_width, e.scales_used});
        } catch (const InsufficientScalesError&) {
        }
    }
    return out;
}

}  // namespace fractalab
