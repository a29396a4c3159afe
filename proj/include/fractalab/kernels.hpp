#pragma once

// Data-parallel kernels. Each kernel has an OpenMP implementation in
// `fractalab::kernels` and a plain loop in `fractalab::kernels::serial`
// with identical results; the serial versions are kept for tests and
// for the benchmark comparison in bench/.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fractalab/ifs.hpp"

namespace fractalab::kernels {

/// Points per chaos-game stream. Each stream is seeded from (seed, stream
/// index) and discards kBurnIn steps, so output does not depend on threads.
inline constexpr std::size_t kStreamLength = 1024;
inline constexpr int kBurnIn = 64;

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

PointCloud chaos_game(const IfsSystem& system, std::span<const double> weights, std::size_t n,
                      std::uint64_t seed);

/// log-sum-exp accumulator: value = log(sum exp(x_i)), compensated.
struct LogSum {
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    double comp = 0.0;

    void add(double log_term);
    void merge(const LogSum& other);
    double value() const;
};

/// log sum_{|w| = k} diameter(w)^s for every k in 1..kmax. Similarity
/// diameters are products of ratios; otherwise the derivative-norm proxy.
/// Terms are visited depth first with no materialised word list.
std::vector<double> word_power_sums(const IfsSystem& system, double s, int kmax);

/// Number of grid cells of side `eps` (origin `origin`, shifted by
/// `shift` cells on every axis) that meet at least one closed ball.
std::size_t box_count(const PointCloud& centers, std::span<const double> radii, double eps,
                      std::span<const double> origin, double shift);

/// Fraction of points lying in the union of closed balls.
double covered_fraction(const PointCloud& points, const PointCloud& centers, std::span<const double> radii);

/// For each candidate center x, the number of distinct map ids among
/// regions (center c_j, radius r_j) with |x - c_j| <= r_j + probe_radius.
/// Returns the maximum and the index of a candidate attaining it.
struct OverlapMax {
    int count = 0;
    std::size_t argmax = 0;
};
OverlapMax max_distinct_overlap(const PointCloud& candidates, const PointCloud& region_centers,
                                std::span<const double> region_radii, std::span<const int> map_ids,
                                double probe_radius);

namespace serial {

PointCloud chaos_game(const IfsSystem& system, std::span<const double> weights, std::size_t n,
                      std::uint64_t seed);
std::vector<double> word_power_sums(const IfsSystem& system, double s, int kmax);
std::size_t box_count(const PointCloud& centers, std::span<const double> radii, double eps,
                      std::span<const double> origin, double shift);
double covered_fraction(const PointCloud& points, const PointCloud& centers, std::span<const double> radii);
OverlapMax max_distinct_overlap(const PointCloud& candidates, const PointCloud& region_centers,
                                std::span<const double> region_radii, std::span<const int> map_ids,
                                double probe_radius);

}  // namespace serial

}  // namespace fractalab::kernels
