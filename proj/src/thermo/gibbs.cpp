#include <algorithm>
#include <cmath>

#include "fractalab/errors.hpp"
#include "fractalab/kernels.hpp"
#include "fractalab/thermo.hpp"

namespace fractalab {

namespace {

void check_budget(const IfsSystem& system, int k, std::uint64_t budget, const char* what) {
    if (word_count(system.size(), k) > budget)
        throw ResourceError(std::string(what) + ": " + std::to_string(system.size()) + "^" + std::to_string(k) +
                                " words exceed the budget of " + std::to_string(budget),
                            max_depth_within(system.size(), budget));
}

// Level arrays built by prepending: the word (i, w) has rank (i-1) m^j + rank(w)
// and f_{iw}'(z) = f_i'(f_w z) f_w'(z).
struct ChainLevel {
    std::vector<Vec> images;
    std::vector<Mat> jacobians;
};

ChainLevel chain_level(const IfsSystem& system, int k, const Vec& anchor) {
    ChainLevel cur{{anchor}, {Mat::Identity(system.dim(), system.dim())}};
    for (int j = 0; j < k; ++j) {
        ChainLevel next;
        const std::size_t n = cur.images.size();
        next.images.resize(n * static_cast<std::size_t>(system.size()));
        next.jacobians.resize(next.images.size());
        for (int i = 1; i <= system.size(); ++i) {
            const auto& f = system.map(i);
            for (std::size_t r = 0; r < n; ++r) {
                const std::size_t at = static_cast<std::size_t>(i - 1) * n + r;
                next.images[at] = f(cur.images[r]);
                next.jacobians[at] = f.jacobian(cur.images[r]) * cur.jacobians[r];
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

std::vector<double> log_cylinder_diameters(const IfsSystem& system, int k, std::uint64_t word_budget) {
    if (k < 0) throw InvalidArgumentError("log_cylinder_diameters: negative depth");
    check_budget(system, k, word_budget, "log_cylinder_diameters");
    const double log_k = std::log(system.attractor_diameter());
    if (system.all_similarities()) {
        std::vector<double> level{log_k};
        for (int j = 0; j < k; ++j) {
            std::vector<double> next;
            next.reserve(level.size() * static_cast<std::size_t>(system.size()));
            for (double v : level)
                for (const auto& f : system.maps()) next.push_back(v + std::log(f.as_similarity()->ratio));
            level = std::move(next);
        }
        return level;
    }
    const ChainLevel lv = chain_level(system, k, system.base_point());
    std::vector<double> out(lv.jacobians.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(operator_norm(lv.jacobians[i])) + log_k;
    return out;
}

GibbsWeights gibbs_weights(const IfsSystem& system, double s, int k, std::uint64_t word_budget) {
    if (k < 1) throw InvalidArgumentError("gibbs_weights: k must be at least 1");
    const auto logd = log_cylinder_diameters(system, k, word_budget);
    kernels::LogSum acc;
    for (double v : logd) acc.add(s * v);
    GibbsWeights g;
    g.k = k;
    g.s = s;
    g.log_normalizer = acc.value();
    g.weights.resize(logd.size());
    for (std::size_t i = 0; i < logd.size(); ++i) g.weights[i] = std::exp(s * logd[i] - g.log_normalizer);
    return g;
}

double GibbsConsistency::gamma() const noexcept {
    return std::exp(std::max(std::abs(bracket_lo), std::abs(bracket_hi)));
}

GibbsConsistency gibbs_consistency(const IfsSystem& system, double s, int k, std::uint64_t word_budget) {
    const GibbsWeights level = gibbs_weights(system, s, k, word_budget);
    const GibbsWeights twice = gibbs_weights(system, s, 2 * k, word_budget);
    const auto logd2 = log_cylinder_diameters(system, 2 * k, word_budget);
    const std::size_t n = level.weights.size();

    GibbsConsistency out;
    out.k = k;
    out.s = s;
    out.log_ratio_min = std::numeric_limits<double>::infinity();
    out.log_ratio_max = -out.log_ratio_min;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            const std::size_t uv = u * n + v;
            const double lr = std::log(level.weights[u]) + std::log(level.weights[v]) - std::log(twice.weights[uv]);
            out.log_ratio_min = std::min(out.log_ratio_min, lr);
            out.log_ratio_max = std::max(out.log_ratio_max, lr);
        }
    }

    if (!system.all_similarities()) {
        // Distortion of f_u' between the anchor and each f_v(anchor).
        const Vec& z = system.base_point();
        const ChainLevel at_anchor = chain_level(system, k, z);
        double log_dist = 0.0, log_cond = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            const ChainLevel at_image = chain_level(system, k, at_anchor.images[v]);
            for (std::size_t u = 0; u < n; ++u) {
                const double nz = operator_norm(at_anchor.jacobians[u]);
                const auto [smin, smax] = singular_value_range(at_image.jacobians[u]);
                log_dist = std::max(log_dist, std::abs(std::log(nz) - std::log(smax)));
                log_cond = std::max(log_cond, std::log(smax) - std::log(smin));
            }
        }
        out.distortion = std::exp(log_dist);
        out.condition = std::exp(log_cond);
    }
    const double log_k = std::log(system.attractor_diameter());
    const double e = twice.log_normalizer - 2.0 * level.log_normalizer;
    out.bracket_lo = s * log_k - s * std::log(out.distortion) + e;
    out.bracket_hi = s * log_k + s * (std::log(out.distortion) + std::log(out.condition)) + e;

    const double p = pressure(system, s, std::max(2, 2 * k), PressureOptions{word_budget, false}).value;
    out.gibbs_log_lo = std::numeric_limits<double>::infinity();
    out.gibbs_log_hi = -out.gibbs_log_lo;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            const double lg = std::log(level.weights[u]) + std::log(level.weights[v]) - s * logd2[u * n + v] + 2.0 * k * p;
            out.gibbs_log_lo = std::min(out.gibbs_log_lo, lg);
            out.gibbs_log_hi = std::max(out.gibbs_log_hi, lg);
        }
    }
    return out;
}

}  // namespace fractalab
