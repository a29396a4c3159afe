#include <algorithm>
#include <cmath>

#include "fractalab/errors.hpp"
#include "fractalab/kernels.hpp"
#include "fractalab/thermo.hpp"

namespace fractalab {

namespace {

DimensionResult similarity_dimension(const IfsSystem& system) {
    auto f = [&](double s) {
        kernels::LogSum acc;
        for (const auto& m : system.maps()) acc.add(s * std::log(m.as_similarity()->ratio));
        return acc.value();
    };
    const auto ratios = system.ratios();
    const double cmax = *std::max_element(ratios.begin(), ratios.end());
    if (std::all_of(ratios.begin(), ratios.end(), [&](double c) { return c == cmax; })) {
        DimensionResult r;
        r.value = r.certified_lo = r.certified_hi = std::log(static_cast<double>(system.size())) / -std::log(cmax);
        r.method = "closed-form";
        return r;
    }
    // sum c_i^s <= m cmax^s, which is 1 at s = log m / log(1/cmax).
    double lo = 0.0;
    double hi = std::log(static_cast<double>(system.size())) / -std::log(cmax);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = f(mid);
        if (v > 0.0) lo = mid;
        else if (v < 0.0) hi = mid;
        else lo = hi = mid;
    }
    DimensionResult r;
    r.value = 0.5 * (lo + hi);
    r.certified_lo = lo;
    r.certified_hi = hi;
    r.method = "closed-form";
    return r;
}

struct Probe {
    PressureEstimate est;
    int depth;
};

class GenericSolver {
public:
    GenericSolver(const IfsSystem& system, const DimensionOptions& opts) : system_(system), opts_(opts) {
        const int budget_depth = std::max(2, max_depth_within(system.size(), opts.word_budget));
        start_depth_ = opts.depth > 0 ? std::min(opts.depth, budget_depth)
                                      : std::clamp(max_depth_within(system.size(), 1u << 12), 2, budget_depth);
        max_depth_ = std::min(budget_depth, start_depth_ + 4);
    }

    // Pressure bracket at s, deepened while it straddles zero.
    Probe probe(double s) const {
        PressureOptions po{opts_.word_budget, false};
        int depth = start_depth_;
        PressureEstimate est = pressure(system_, s, depth, po);
        while (est.lo <= 0.0 && est.hi >= 0.0 && depth + 2 <= max_depth_) {
            depth += 2;
            est = pressure(system_, s, depth, po);
        }
        return {std::move(est), depth};
    }

    static double sign_of(const PressureEstimate& e) {
        if (e.lo > 0.0) return 1.0;
        if (e.hi < 0.0) return -1.0;
        return 0.5 * (e.lo + e.hi) > 0.0 ? 1.0 : -1.0;
    }

    DimensionResult solve(double tol) const {
        double lo = 0.0;
        double hi = 1.0;
        while (sign_of(probe(hi).est) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 64.0) throw InconclusiveError("conformality_dimension: pressure stays positive up to s = 64", {});
        }
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (sign_of(probe(mid).est) > 0.0) lo = mid;
            else hi = mid;
        }
        DimensionResult r;
        r.value = 0.5 * (lo + hi);
        const Probe at = probe(r.value);
        r.depth = at.depth;
        r.ladder = at.est.gk;
        r.method = "enumerated";

        // Walk outwards until the bracket sign is unambiguous on each side.
        double step = std::max(tol, 1e-6);
        r.certified_lo = r.value;
        while (!(probe(r.certified_lo).est.lo > 0.0)) {
            r.certified_lo = std::max(0.0, r.certified_lo - step);
            step *= 2.0;
            if (r.value - r.certified_lo > opts_.max_certified_width || r.certified_lo == 0.0) break;
        }
        step = std::max(tol, 1e-6);
        r.certified_hi = r.value;
        while (!(probe(r.certified_hi).est.hi < 0.0)) {
            r.certified_hi += step;
            step *= 2.0;
            if (r.certified_hi - r.value > opts_.max_certified_width) break;
        }
        if (r.certified_hi - r.certified_lo > opts_.max_certified_width)
            throw InconclusiveError("conformality_dimension: pressure bracket too wide to certify the root (certified interval [" +
                                        std::to_string(r.certified_lo) + ", " + std::to_string(r.certified_hi) + "])",
                                    r.ladder);
        return r;
    }

private:
    const IfsSystem& system_;
    DimensionOptions opts_;
    int max_depth_ = 2;
    int start_depth_ = 2;
};

}  // namespace

DimensionResult conformality_dimension(const IfsSystem& system, double tol, const DimensionOptions& opts) {
    if (!(tol > 0.0)) throw InvalidArgumentError("conformality_dimension: tol must be positive");
    if (system.all_similarities()) return similarity_dimension(system);
    return GenericSolver(system, opts).solve(tol);
}

}  // namespace fractalab
