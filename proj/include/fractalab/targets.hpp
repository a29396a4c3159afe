#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fractalab/budget.hpp"
#include "fractalab/ifs.hpp"

namespace fractalab {

/// Non-increasing sequence g(k) given in closed form.
struct GSpec {
    enum class Kind { Constant, Power, Exponential };
    Kind kind = Kind::Constant;
    double param = 0.0;  ///< tau for k^-tau, a for e^{-a k}

    static GSpec constant() { return {}; }
    static GSpec power(double tau);
    static GSpec exponential(double a);

    double operator()(int k) const;
    std::string name() const;
};

/// Ball radius for a word w: (|f_w(K)| g(|w|))^exponent. The plain shrinking
/// target family is exponent = delta with g = 1.
struct RadiusRule {
    double exponent = 1.0;
    GSpec g;
};

/// All balls drawn from one cut-set.
struct Generation {
    double cut_radius = 0.0;
    PointCloud centers;
    std::vector<double> radii;
    std::vector<double> diameters;
    double max_radius() const;
    std::size_t size() const noexcept { return radii.size(); }
};

struct BoxCountPoint {
    double eps = 0.0;
    std::size_t count = 0;
    int generation = -1;  ///< index of the generation used at this scale
};

struct BoxDimensionEstimate {
    double value = 0.0;       ///< slope clamped to [0, d]
    double slope = 0.0;       ///< raw least-squares slope
    double half_width = 0.0;  ///< two standard errors
    std::size_t scales_used = 0;
    std::vector<BoxCountPoint> curve;  ///< every scale with N > 0, before edge trimming
};

struct Stabilization {
    int offset = 0;  ///< generations past the nearest one
    double value = 0.0;
    double half_width = 0.0;
    std::size_t scales_used = 0;
};

struct TargetExperiment {
    Vec x0;
    double delta = 1.0;
    RadiusRule rule;
    std::vector<Generation> generations;
    BoxDimensionEstimate estimate;
    std::vector<Stabilization> stabilization;
    double series_bound = 0.0;
};

/// Cut radii r_j = r_max * rho^j down to r_min, rho the largest contraction.
std::vector<double> cut_radius_ladder(const IfsSystem& system, double r_max, double r_min);

/// eps_max * 2^{-j/steps} for j = 0.. while >= eps_min (within 1e-12).
std::vector<double> dyadic_eps_ladder(double eps_max, double eps_min, int steps_per_octave = 4);

/// For each r in the ladder and each w in cut_set(r): the ball
/// B(f_w(x0), |f_w(K)|^delta). Throws InvalidArgumentError when delta < 0
/// or x0 lies outside the bounding ball.
TargetExperiment target_balls(const IfsSystem& system, const Vec& x0, double delta, std::span<const double> r_ladder,
                              std::uint64_t word_budget = default_word_budget());
TargetExperiment target_balls(const IfsSystem& system, const Vec& x0, const RadiusRule& rule,
                              std::span<const double> r_ladder, std::uint64_t word_budget = default_word_budget());

/// Fraction of an invariant-measure sample covered by each generation.
std::vector<double> coverage_check(const TargetExperiment& exp, const IfsSystem& system, std::span<const double> weights,
                                   std::size_t n_points, std::uint64_t seed);

/// Box-counting slope of the limsup set. At each eps the deepest generation
/// whose largest ball radius is still >= eps stands in for the limsup; N(eps)
/// counts eps-grid cells meeting its balls (max over the grid anchored at the
/// bounding-ball corner and the half-cell shifted one). With a nonzero
/// `generation_offset` the generation that many steps deeper is used
/// instead. The largest and smallest usable eps are dropped before the fit.
/// Throws InsufficientScalesError when fewer than 3 scales remain.
BoxDimensionEstimate limsup_box_dimension(const TargetExperiment& exp, const IfsSystem& system,
                                          std::span<const double> eps_ladder, std::size_t generation_offset = 0);

/// Estimates with generation offsets 0, 1, 2; offsets that leave too few
/// scales are omitted.
std::vector<Stabilization> stabilization_report(const TargetExperiment& exp, const IfsSystem& system,
                                                std::span<const double> eps_ladder);

struct SeriesBound {
    double delta = 0.0;
    double value = 0.0;  ///< dim(S) / delta
    double dim = 0.0;
    double epsilon = 0.0;
    /// Pressure brackets at dim(S) + epsilon and dim(S) - epsilon.
    double pressure_above_hi = 0.0;
    double pressure_below_lo = 0.0;
};

/// dim(S)/delta, certified by P(dim + eps) < 0 (the series converges) and
/// P(dim - eps) > 0 (it diverges). Throws InconclusiveError otherwise.
SeriesBound series_upper_bound(const IfsSystem& system, double delta, double epsilon = 1e-3,
                               std::uint64_t word_budget = default_word_budget());

struct BakerConfig {
    GSpec g;
    double s_g = 0.0;
    double dim = 0.0;
    /// Whether sum_k k (|f_w(K)| g(k))^s converges at s = s_g itself.
    bool converges_at_s_g = false;
    /// Root-test factor just below s_g, > 1 when the series diverges there.
    double root_factor_below = 0.0;
    bool entropy_branch = false;
    bool equal_ratio_branch = false;
    bool g_monotone = true;
    bool condition() const noexcept { return entropy_branch || equal_ratio_branch; }
};

/// Critical exponent of sum_k k sum_{|w|=k} (|f_w(K)| g(k))^s. The root test
/// gives the factor L(s) = e^{-a s} sum c_i^s (a = 0 unless g is
/// exponential); s_g solves L(s) = 1 by bisection. Similarity systems only.
BakerConfig baker_sg(const IfsSystem& system, const GSpec& g, double tol = 1e-12);

struct CompbakerResult {
    BakerConfig config;
    double delta = 1.0;
    double predicted = 0.0;
    TargetExperiment experiment;
    bool exact_overlaps = false;
};

/// Limsup box dimension for radii (|f_w(K)| g(|w|))^{delta s_g / dim(S)},
/// with the predicted value dim(S) for delta <= 1 and dim(S)/delta above.
CompbakerResult compbaker_experiment(const IfsSystem& system, const Vec& x0, const GSpec& g, double delta,
                                     std::span<const double> r_ladder, std::span<const double> eps_ladder,
                                     std::uint64_t word_budget = default_word_budget());

}  // namespace fractalab
