#include <cmath>
#include <exception>

#include "fractalab/cutset.hpp"
#include "fractalab/errors.hpp"
#include "fractalab/kernels.hpp"
#include "fractalab/targets.hpp"
#include "fractalab/text.hpp"

namespace fractalab {

GSpec GSpec::power(double tau) {
    if (!(tau > 0.0)) throw InvalidArgumentError("g: power exponent must be positive");
    return {Kind::Power, tau};
}

GSpec GSpec::exponential(double a) {
    if (!(a > 0.0)) throw InvalidArgumentError("g: exponential rate must be positive");
    return {Kind::Exponential, a};
}

double GSpec::operator()(int k) const {
    switch (kind) {
        case Kind::Power: return k <= 0 ? 1.0 : std::pow(static_cast<double>(k), -param);
        case Kind::Exponential: return std::exp(-param * k);
        default: return 1.0;
    }
}

std::string GSpec::name() const {
    switch (kind) {
        case Kind::Power: return "power(" + format_number(param) + ")";
        case Kind::Exponential: return "exp(" + format_number(param) + ")";
        default: return "constant";
    }
}

double Generation::max_radius() const {
    double r = 0.0;
    for (double x : radii) r = std::max(r, x);
    return r;
}

std::vector<double> cut_radius_ladder(const IfsSystem& system, double r_max, double r_min) {
    if (!(r_min > 0.0) || !(r_min <= r_max) || !(r_max < system.attractor_diameter()))
        throw InvalidArgumentError("cut radius ladder: need 0 < r_min <= r_max < |K|");
    const double rho = system.max_contraction();
    std::vector<double> out;
    for (double r = r_max; r >= r_min * (1.0 - 1e-12); r *= rho) out.push_back(r);
    return out;
}

std::vector<double> dyadic_eps_ladder(double eps_max, double eps_min, int steps_per_octave) {
    if (!(eps_min > 0.0) || !(eps_min <= eps_max) || steps_per_octave < 1)
        throw InvalidArgumentError("eps ladder: need 0 < eps_min <= eps_max and steps >= 1");
    std::vector<double> out;
    for (int j = 0;; ++j) {
        const double e = eps_max * std::exp2(-static_cast<double>(j) / steps_per_octave);
        if (e < eps_min * (1.0 - 1e-12)) break;
        out.push_back(e);
    }
    return out;
}

TargetExperiment target_balls(const IfsSystem& system, const Vec& x0, double delta, std::span<const double> r_ladder,
                              std::uint64_t word_budget) {
    if (!(delta >= 0.0)) throw InvalidArgumentError("target_balls: delta must be non-negative");
    RadiusRule rule;
    rule.exponent = delta;
    TargetExperiment exp = target_balls(system, x0, rule, r_ladder, word_budget);
    exp.delta = delta;
    return exp;
}

TargetExperiment target_balls(const IfsSystem& system, const Vec& x0, const RadiusRule& rule,
                              std::span<const double> r_ladder, std::uint64_t word_budget) {
    if (!(rule.exponent >= 0.0)) throw InvalidArgumentError("target_balls: radius exponent must be non-negative");
    if (x0.size() != system.dim()) throw InvalidArgumentError("target_balls: x0 has the wrong dimension");
    if (!system.bounding_ball().contains(x0)) throw InvalidArgumentError("target_balls: x0 outside the bounding ball");
    if (r_ladder.empty()) throw InvalidArgumentError("target_balls: empty radius ladder");

    TargetExperiment exp;
    exp.x0 = x0;
    exp.delta = rule.exponent;
    exp.rule = rule;
    exp.generations.resize(r_ladder.size());

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t gi = 0; gi < static_cast<std::int64_t>(r_ladder.size()); ++gi) {
        try {
            Generation& gen = exp.generations[static_cast<std::size_t>(gi)];
            gen.cut_radius = r_ladder[static_cast<std::size_t>(gi)];
            gen.centers.dim = system.dim();
            for_each_cut_word(system, gen.cut_radius, word_budget, [&](const Word& w, double diam, const Similarity* sim) {
                gen.centers.push_back(sim ? (*sim)(x0) : compose_word(system, w)(x0));
                gen.diameters.push_back(diam);
                gen.radii.push_back(std::pow(diam * rule.g(static_cast<int>(w.size())), rule.exponent));
            });
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return exp;
}

std::vector<double> coverage_check(const TargetExperiment& exp, const IfsSystem& system, std::span<const double> weights,
                                   std::size_t n_points, std::uint64_t seed) {
    if (exp.generations.size() < 2) throw InvalidArgumentError("coverage_check: need at least two generations");
    const PointCloud sample = attractor_sample(system, weights, n_points, seed);
    std::vector<double> out;
    out.reserve(exp.generations.size());
    for (const auto& gen : exp.generations) out.push_back(kernels::covered_fraction(sample, gen.centers, gen.radii));
    return out;
}

}  // namespace fractalab
