#include <algorithm>
#include <cmath>

#include "fractalab/cutset.hpp"
#include "fractalab/errors.hpp"
#include "fractalab/kernels.hpp"
#include "fractalab/targets.hpp"
#include "fractalab/thermo.hpp"

namespace fractalab {

namespace {

// log of the root-test factor lim (k-th root of the k-th term).
double log_root_factor(const std::vector<double>& ratios, const GSpec& g, double s) {
    kernels::LogSum acc;
    for (double c : ratios) acc.add(s * std::log(c));
    const double rate = g.kind == GSpec::Kind::Exponential ? g.param : 0.0;
    return acc.value() - rate * s;
}

}  // namespace

BakerConfig baker_sg(const IfsSystem& system, const GSpec& g, double tol) {
    if (!system.all_similarities()) throw InvalidArgumentError("baker_sg: similarity systems only");
    if (!(tol > 0.0)) throw InvalidArgumentError("baker_sg: tol must be positive");
    const auto ratios = system.ratios();

    BakerConfig cfg;
    cfg.g = g;
    for (int k = 1; k < 64; ++k)
        if (g(k + 1) > g(k)) cfg.g_monotone = false;

    // L(0) = m > 1 and L decreases to 0, so the root is bracketed by [0, hi].
    double lo = 0.0, hi = 1.0;
    while (log_root_factor(ratios, g, hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (log_root_factor(ratios, g, mid) > 0.0 ? lo : hi) = mid;
    }
    cfg.s_g = 0.5 * (lo + hi);
    cfg.root_factor_below = std::exp(log_root_factor(ratios, g, cfg.s_g - 1e-6));
    // At L = 1 the k-th term is k g(k)^s |K|^s: summable only for k^{-tau} with tau s > 2.
    cfg.converges_at_s_g = g.kind == GSpec::Kind::Power && g.param * cfg.s_g > 2.0;

    cfg.dim = conformality_dimension(system, 1e-12).value;
    double entropy = 0.0, log_corr = 0.0;
    kernels::LogSum corr;
    for (double c : ratios) {
        const double p = std::pow(c, cfg.dim);
        entropy -= p * std::log(p);
        corr.add(2.0 * cfg.dim * std::log(c));
    }
    log_corr = corr.value();
    cfg.entropy_branch = entropy < -2.0 * log_corr;
    const auto [cmin, cmax] = std::minmax_element(ratios.begin(), ratios.end());
    cfg.equal_ratio_branch = *cmax - *cmin <= 1e-12 * *cmax;
    return cfg;
}

CompbakerResult compbaker_experiment(const IfsSystem& system, const Vec& x0, const GSpec& g, double delta,
                                     std::span<const double> r_ladder, std::span<const double> eps_ladder,
                                     std::uint64_t word_budget) {
    if (!(delta > 0.0)) throw InvalidArgumentError("compbaker_experiment: delta must be positive");
    CompbakerResult res;
    res.config = baker_sg(system, g);
    if (!res.config.condition())
        throw InvalidArgumentError("compbaker_experiment: neither branch of the ratio condition holds");
    res.exact_overlaps = !exact_overlap_scan(system, std::min(6, max_depth_within(system.size(), 1u << 16)), word_budget).empty();
    if (res.exact_overlaps) throw InvalidArgumentError("compbaker_experiment: system has exact overlaps");

    res.delta = delta;
    res.predicted = delta <= 1.0 ? res.config.dim : res.config.dim / delta;
    RadiusRule rule;
    rule.exponent = delta * res.config.s_g / res.config.dim;
    rule.g = g;
    res.experiment = target_balls(system, x0, rule, r_ladder, word_budget);
    res.experiment.delta = delta;
    res.experiment.estimate = limsup_box_dimension(res.experiment, system, eps_ladder);
    res.experiment.stabilization = stabilization_report(res.experiment, system, eps_ladder);
    res.experiment.series_bound = res.predicted;
    return res;
}

}  // namespace fractalab
