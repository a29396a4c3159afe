#include <algorithm>
#include <cmath>

#include "fractalab/errors.hpp"
#include "fractalab/kernels.hpp"
#include "fractalab/thermo.hpp"

namespace fractalab {

namespace {

double log_sum_ratio_powers(const IfsSystem& system, double s) {
    kernels::LogSum acc;
    for (const auto& f : system.maps()) acc.add(s * std::log(f.as_similarity()->ratio));
    return acc.value();
}

struct Bracket {
    double lo, hi, defect_upper, defect_lower;
};

// Fekete-style bracket from g_1..g_n (1-based in the maths, 0-based here).
Bracket bracket_from(const std::vector<double>& gk, std::size_t n) {
    double up = -std::numeric_limits<double>::infinity();
    double dn = std::numeric_limits<double>::infinity();
    for (std::size_t a = 1; a < n; ++a) {
        for (std::size_t b = a; a + b <= n; ++b) {
            const double d = gk[a + b - 1] - gk[a - 1] - gk[b - 1];
            up = std::max(up, d);
            dn = std::min(dn, d);
        }
    }
    if (n < 2) up = dn = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double lo = -hi;
    for (std::size_t k = 1; k <= n; ++k) {
        hi = std::min(hi, (gk[k - 1] + up) / static_cast<double>(k));
        lo = std::max(lo, (gk[k - 1] + dn) / static_cast<double>(k));
    }
    if (lo > hi) std::swap(lo, hi);
    return {lo, hi, up, dn};
}

}  // namespace

PressureEstimate pressure(const IfsSystem& system, double s, int kmax, const PressureOptions& opts) {
    if (!(s >= 0.0)) throw InvalidArgumentError("pressure: s must be non-negative");
    if (kmax < 2) throw InvalidArgumentError("pressure: kmax must be at least 2");

    PressureEstimate est;
    est.s = s;
    const double log_k = std::log(system.attractor_diameter());

    // At s = 0 every term is 1, so g_k = k log m for any system.
    const bool closed = !opts.force_enumeration && (system.all_similarities() || s == 0.0);
    if (closed) {
        const double per_symbol = s == 0.0 ? std::log(static_cast<double>(system.size())) : log_sum_ratio_powers(system, s);
        for (int k = 1; k <= kmax; ++k) est.gk.push_back(k * per_symbol + s * log_k);
        est.value = est.lo = est.hi = per_symbol;
        est.defect_upper = est.defect_lower = -s * log_k;
        est.widths.assign(static_cast<std::size_t>(kmax - 1), 0.0);
        est.method = "closed-form";
        return est;
    }

    const int m = system.size();
    if (word_count(m, kmax) > opts.word_budget) {
        const int affordable = max_depth_within(m, opts.word_budget);
        std::vector<double> partial = affordable >= 1 ? kernels::word_power_sums(system, s, affordable) : std::vector<double>{};
        throw ResourceError("pressure: " + std::to_string(m) + "^" + std::to_string(kmax) + " words exceed the budget of " +
                                std::to_string(opts.word_budget),
                            affordable, std::move(partial));
    }
    est.gk = kernels::word_power_sums(system, s, kmax);
    for (double g : est.gk)
        if (!std::isfinite(g)) throw Error("pressure: non-finite g_k (diameter underflow)");

    for (std::size_t n = 2; n <= est.gk.size(); ++n) {
        const Bracket b = bracket_from(est.gk, n);
        est.widths.push_back(b.hi - b.lo);
    }
    const Bracket b = bracket_from(est.gk, est.gk.size());
    est.lo = b.lo;
    est.hi = b.hi;
    est.defect_upper = b.defect_upper;
    est.defect_lower = b.defect_lower;
    est.value = std::clamp(est.gk.back() / kmax, est.lo, est.hi);
    est.method = "enumerated";
    return est;
}

}  // namespace fractalab
