#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fractalab/budget.hpp"
#include "fractalab/ifs.hpp"

namespace fractalab {

struct PressureOptions {
    std::uint64_t word_budget = default_word_budget();
    /// Enumerate words even when the closed form is available.
    bool force_enumeration = false;
};

/// Finite-depth estimate of P(s) = lim g_k / k, g_k = log sum_{|w|=k} |f_w(K)|^s.
struct PressureEstimate {
    double s = 0.0;
    std::vector<double> gk;  ///< g_1 .. g_kmax
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::string method;  ///< "closed-form" or "enumerated"
    /// Largest and smallest observed g_{a+b} - g_a - g_b over a + b <= kmax.
    double defect_upper = 0.0;
    double defect_lower = 0.0;
    /// Bracket width using g_1..g_j, for j = 2..kmax.
    std::vector<double> widths;

    double width() const noexcept { return hi - lo; }
};

/// Closed form for similarity systems, depth-first enumeration otherwise.
/// The bracket comes from the fitted quasi-(sub/super)additivity defects:
///   hi = min_k (g_k + defect_upper) / k,   lo = max_k (g_k + defect_lower) / k.
/// Throws ResourceError (carrying g_1..g_j for the affordable j) when m^kmax
/// exceeds the budget.
PressureEstimate pressure(const IfsSystem& system, double s, int kmax, const PressureOptions& opts = {});

struct DimensionOptions {
    std::uint64_t word_budget = default_word_budget();
    /// Starting enumeration depth for non-similarity systems (0 = automatic).
    int depth = 0;
    /// Give up when the certified s-interval is wider than this.
    double max_certified_width = 0.25;
};

struct DimensionResult {
    double value = 0.0;
    /// Interval on which the pressure bracket sign certifies the root:
    /// P > 0 entirely at `certified_lo`, P < 0 entirely at `certified_hi`.
    double certified_lo = 0.0;
    double certified_hi = 0.0;
    int depth = 0;  ///< 0 for the closed form
    std::string method;
    std::vector<double> ladder;  ///< g_k at the returned root (enumerated only)
};

/// Root of s -> P(s). Similarity systems solve sum c_i^s = 1 by bisection
/// to 1e-12; otherwise bisection on pressure brackets, deepening when the
/// bracket straddles zero. Throws InconclusiveError when the certified
/// interval is wider than opts.max_certified_width.
DimensionResult conformality_dimension(const IfsSystem& system, double tol, const DimensionOptions& opts = {});

/// log |f_w(K)| for every w of length k, in rank (lexicographic) order.
std::vector<double> log_cylinder_diameters(const IfsSystem& system, int k, std::uint64_t word_budget = default_word_budget());

struct GibbsWeights {
    int k = 0;
    double s = 0.0;
    double log_normalizer = 0.0;  ///< g_k
    std::vector<double> weights;  ///< rank order over Lambda^k
};

/// p_w = |f_w(K)|^s / e^{g_k} over all words of length k.
GibbsWeights gibbs_weights(const IfsSystem& system, double s, int k, std::uint64_t word_budget = default_word_budget());

/// Level-k weights pushed to level 2k by products, against the direct
/// level-2k weights. The bracket on log(p_u p_v / q_uv) is derived from
/// the chain rule: with D the distortion of f_u' between the anchor and
/// the points f_v(anchor), and kappa the worst condition number,
///   s log|K| - s log D + e  <=  log ratio  <=  s log|K| + s log(D kappa) + e,
/// e = g_{2k} - 2 g_k. Similarity systems have D = kappa = 1.
struct GibbsConsistency {
    int k = 0;
    double s = 0.0;
    double log_ratio_min = 0.0;
    double log_ratio_max = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double distortion = 1.0;
    double condition = 1.0;
    /// Observed range of log( nu([w]) / (|f_w(K)|^s e^{-2k P}) ) at level 2k.
    double gibbs_log_lo = 0.0;
    double gibbs_log_hi = 0.0;

    bool within() const noexcept {
        return log_ratio_min >= bracket_lo - 1e-12 && log_ratio_max <= bracket_hi + 1e-12;
    }
    double gamma() const noexcept;
};

GibbsConsistency gibbs_consistency(const IfsSystem& system, double s, int k, std::uint64_t word_budget = default_word_budget());

struct ErgodicStats {
    std::vector<double> weights;
    double entropy = 0.0;          ///< nats per symbol
    double lyapunov = 0.0;         ///< nats per symbol
    double lyapunov_stderr = 0.0;  ///< 0 when exact
    double dim_formula = 0.0;      ///< min(entropy / lyapunov, d)
    std::string method;            ///< "exact" or "monte-carlo"
};

/// Similarity: lambda = -sum p_i log c_i exactly. Otherwise the mean of
/// -log ||f_w'(anchor)|| / length over n_words random words.
ErgodicStats lyapunov_exponent(const IfsSystem& system, std::span<const double> weights, std::size_t n_words, int length,
                               std::uint64_t seed);

/// Entropy and Lyapunov exponent of the Bernoulli measure on blocks of
/// length k given by `weights`, both per symbol.
ErgodicStats block_ergodic_stats(const IfsSystem& system, const GibbsWeights& weights);

/// Max over sampled words of length k and anchors of
/// (1/k)(log sigma_max - log sigma_min) of the derivative chain. Zero for
/// similarity systems.
double weak_conformality_diagnostic(const IfsSystem& system, int k, std::size_t n_words, std::uint64_t seed);

}  // namespace fractalab
