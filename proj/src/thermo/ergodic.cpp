#include <algorithm>
#include <cmath>
#include <random>

#include "fractalab/errors.hpp"
#include "fractalab/kernels.hpp"
#include "fractalab/thermo.hpp"

namespace fractalab {

namespace {

double entropy_of(std::span<const double> p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log(x);
    return h;
}

Word random_word(std::mt19937_64& rng, std::span<const double> cdf, int length) {
    std::vector<int> idx(static_cast<std::size_t>(length));
    for (auto& i : idx) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        auto pos = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        i = static_cast<int>(std::min(pos, cdf.size() - 1)) + 1;
    }
    return Word(std::move(idx));
}

std::vector<double> cdf_of(std::span<const double> w) {
    std::vector<double> c(w.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) c[i] = (acc += w[i]);
    c.back() = 1.0;
    return c;
}

}  // namespace

ErgodicStats lyapunov_exponent(const IfsSystem& system, std::span<const double> weights, std::size_t n_words, int length,
                               std::uint64_t seed) {
    check_weights(weights, system.size());
    if (length < 32) throw InvalidArgumentError("lyapunov_exponent: word length must be at least 32");

    ErgodicStats st;
    st.weights.assign(weights.begin(), weights.end());
    st.entropy = entropy_of(weights);
    if (system.all_similarities()) {
        for (int i = 1; i <= system.size(); ++i)
            st.lyapunov -= weights[static_cast<std::size_t>(i - 1)] * std::log(system.map(i).as_similarity()->ratio);
        st.method = "exact";
    } else {
        if (n_words < 2) throw InvalidArgumentError("lyapunov_exponent: need at least two sample words");
        const auto cdf = cdf_of(weights);
        std::vector<double> samples(n_words);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_words); ++i) {
            std::mt19937_64 rng(kernels::stream_seed(seed, static_cast<std::uint64_t>(i)));
            const Word w = random_word(rng, cdf, length);
            samples[static_cast<std::size_t>(i)] = -std::log(cylinder_geometry(system, w).derivative_norm) / length;
        }
        double mean = 0.0;
        for (double x : samples) mean += x;
        mean /= static_cast<double>(n_words);
        double var = 0.0;
        for (double x : samples) var += (x - mean) * (x - mean);
        var /= static_cast<double>(n_words - 1);
        st.lyapunov = mean;
        st.lyapunov_stderr = std::sqrt(var / static_cast<double>(n_words));
        st.method = "monte-carlo";
    }
    st.dim_formula = std::clamp(st.entropy / st.lyapunov, 0.0, static_cast<double>(system.dim()));
    return st;
}

ErgodicStats block_ergodic_stats(const IfsSystem& system, const GibbsWeights& g) {
    const auto logd = log_cylinder_diameters(system, g.k);
    const double log_k = std::log(system.attractor_diameter());
    ErgodicStats st;
    st.weights = g.weights;
    st.entropy = entropy_of(g.weights) / g.k;
    double lam = 0.0;
    for (std::size_t i = 0; i < logd.size(); ++i) lam -= g.weights[i] * (logd[i] - log_k);
    st.lyapunov = lam / g.k;
    st.dim_formula = std::clamp(st.entropy / st.lyapunov, 0.0, static_cast<double>(system.dim()));
    st.method = system.all_similarities() ? "exact" : "proxy";
    return st;
}

double weak_conformality_diagnostic(const IfsSystem& system, int k, std::size_t n_words, std::uint64_t seed) {
    if (k < 1) throw InvalidArgumentError("weak_conformality_diagnostic: k must be at least 1");
    if (system.all_similarities()) return 0.0;
    // Anchors: the base point plus a few points of the attractor.
    const PointCloud anchors = kernels::chaos_game(system, uniform_weights(system.size()), 4, seed ^ 0xa5a5a5a5ULL);
    std::vector<Vec> pts{system.base_point()};
    for (std::size_t i = 0; i < anchors.size(); ++i) pts.push_back(anchors.vec(i));
    const auto cdf = cdf_of(uniform_weights(system.size()));
    std::vector<double> defect(n_words, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_words); ++i) {
        std::mt19937_64 rng(kernels::stream_seed(seed, static_cast<std::uint64_t>(i)));
        const ComposedMap f = compose_word(system, random_word(rng, cdf, k));
        double worst = 0.0;
        for (const Vec& z : pts) {
            const auto [smin, smax] = singular_value_range(f.jacobian(z));
            worst = std::max(worst, (std::log(smax) - std::log(smin)) / k);
        }
        defect[static_cast<std::size_t>(i)] = worst;
    }
    return n_words ? *std::max_element(defect.begin(), defect.end()) : 0.0;
}

}  // namespace fractalab
