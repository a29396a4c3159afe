#include <omp.h>

#include <algorithm>
#include <random>

#include "fractalab/kernels.hpp"

namespace fractalab::kernels {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (stream * 0xd1b54a32d192ed03ULL);
    splitmix64(state);
    return splitmix64(state);
}

namespace {

// Cumulative weights; the last entry is forced to 1 so every draw lands.
std::vector<double> cumulative(std::span<const double> weights) {
    std::vector<double> cdf(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    return cdf;
}

void run_stream(const IfsSystem& system, const std::vector<double>& cdf, std::uint64_t seed,
                std::size_t count, double* out) {
    const int d = system.dim();
    std::mt19937_64 rng(seed);
    std::vector<double> x(system.bounding_ball().center.data(), system.bounding_ball().center.data() + d);
    std::vector<double> y(static_cast<std::size_t>(d));
    auto step = [&] {
        // 53-bit uniform in [0, 1) without relying on the distribution's implementation.
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        idx = std::min(idx, cdf.size() - 1);
        system.maps()[idx].apply(x, y);
        std::swap(x, y);
    };
    for (int i = 0; i < kBurnIn; ++i) step();
    for (std::size_t p = 0; p < count; ++p) {
        step();
        std::copy(x.begin(), x.end(), out + p * static_cast<std::size_t>(d));
    }
}

}  // namespace

PointCloud chaos_game(const IfsSystem& system, std::span<const double> weights, std::size_t n,
                      std::uint64_t seed) {
    PointCloud cloud;
    cloud.dim = system.dim();
    cloud.coords.resize(n * static_cast<std::size_t>(cloud.dim));
    const auto cdf = cumulative(weights);
    const auto streams = static_cast<std::int64_t>((n + kStreamLength - 1) / kStreamLength);
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < streams; ++s) {
        const std::size_t begin = static_cast<std::size_t>(s) * kStreamLength;
        const std::size_t count = std::min(kStreamLength, n - begin);
        run_stream(system, cdf, stream_seed(seed, static_cast<std::uint64_t>(s)), count,
                   cloud.coords.data() + begin * static_cast<std::size_t>(cloud.dim));
    }
    return cloud;
}

namespace serial {

PointCloud chaos_game(const IfsSystem& system, std::span<const double> weights, std::size_t n,
                      std::uint64_t seed) {
    PointCloud cloud;
    cloud.dim = system.dim();
    cloud.coords.resize(n * static_cast<std::size_t>(cloud.dim));
    const auto cdf = cumulative(weights);
    for (std::size_t begin = 0, s = 0; begin < n; begin += kStreamLength, ++s) {
        run_stream(system, cdf, stream_seed(seed, s), std::min(kStreamLength, n - begin),
                   cloud.coords.data() + begin * static_cast<std::size_t>(cloud.dim));
    }
    return cloud;
}

}  // namespace serial

}  // namespace fractalab::kernels
