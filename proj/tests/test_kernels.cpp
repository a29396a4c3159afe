#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <random>

#include "fractalab/kernels.hpp"
#include "systems.hpp"

using namespace fractalab;
using namespace fractalab::testing;

namespace {

struct ThreadScope {
    int saved = omp_get_max_threads();
    explicit ThreadScope(int n) { omp_set_num_threads(n); }
    ~ThreadScope() { omp_set_num_threads(saved); }
};

PointCloud random_cloud(int d, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PointCloud c{d, {}};
    for (std::size_t i = 0; i < n * static_cast<std::size_t>(d); ++i) c.coords.push_back(u(rng));
    return c;
}

}  // namespace

TEST_CASE("chaos game is identical across thread counts and the serial loop") {
    const IfsSystem sys = rotations();
    const auto ref = kernels::serial::chaos_game(sys, uniform_weights(3), 20000, 77);
    for (int t : {1, 2, 4, 7}) {
        ThreadScope scope(t);
        CHECK(kernels::chaos_game(sys, uniform_weights(3), 20000, 77).coords == ref.coords);
    }
    // A shorter run is a prefix of a longer one.
    const auto shorter = kernels::chaos_game(sys, uniform_weights(3), 3000, 77);
    CHECK(std::equal(shorter.coords.begin(), shorter.coords.end(), ref.coords.begin()));
}

TEST_CASE("word power sums agree with the serial traversal") {
    for (const IfsSystem& sys : {rotations(), half_quarter_quarter()}) {
        const auto ref = kernels::serial::word_power_sums(sys, 0.9, 9);
        for (int t : {1, 3, 8}) {
            ThreadScope scope(t);
            const auto par = kernels::word_power_sums(sys, 0.9, 9);
            REQUIRE(par.size() == ref.size());
            for (std::size_t k = 0; k < ref.size(); ++k) CHECK(std::abs(par[k] - ref[k]) <= 1e-12 * std::max(1.0, std::abs(ref[k])));
        }
    }
}

TEST_CASE("box counts agree") {
    for (int d : {1, 2, 3}) {
        const auto centers = random_cloud(d, 5000, 10 + static_cast<std::uint64_t>(d));
        std::vector<double> radii(centers.size());
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.0, 0.01);
        for (double& r : radii) r = u(rng);
        const std::vector<double> origin(static_cast<std::size_t>(d), -1.0);
        for (double eps : {0.1, 0.013, 0.002}) {
            for (double shift : {0.0, 0.5}) {
                const auto ref = kernels::serial::box_count(centers, radii, eps, origin, shift);
                for (int t : {1, 4}) {
                    ThreadScope scope(t);
                    CHECK(kernels::box_count(centers, radii, eps, origin, shift) == ref);
                }
            }
        }
    }
}

TEST_CASE("box count of a single ball by hand") {
    PointCloud c{1, {0.5}};
    const std::vector<double> r{0.1};
    const std::vector<double> origin{0.0};
    // [0.4, 0.6] meets cells [0.375, 0.5) and [0.5, 0.625) of side 1/8.
    CHECK(kernels::box_count(c, r, 0.125, origin, 0.0) == 2);
    CHECK(kernels::box_count(c, r, 0.25, origin, 0.0) == 2);
    CHECK(kernels::box_count(c, r, 1.0, origin, 0.0) == 1);
}

TEST_CASE("covered fraction agrees") {
    const auto pts = random_cloud(2, 20000, 1);
    const auto centers = random_cloud(2, 300, 2);
    std::vector<double> radii(300, 0.02);
    const double ref = kernels::serial::covered_fraction(pts, centers, radii);
    for (int t : {1, 4}) {
        ThreadScope scope(t);
        CHECK(kernels::covered_fraction(pts, centers, radii) == ref);
    }
    CHECK(ref > 0.0);
    CHECK(ref < 1.0);
}

TEST_CASE("distinct overlap maximum agrees") {
    const auto cand = random_cloud(2, 2000, 5);
    const auto centers = random_cloud(2, 500, 6);
    std::vector<double> radii(500, 0.01);
    std::vector<int> ids(500);
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i % 37);
    const auto ref = kernels::serial::max_distinct_overlap(cand, centers, radii, ids, 0.05);
    for (int t : {1, 4}) {
        ThreadScope scope(t);
        const auto got = kernels::max_distinct_overlap(cand, centers, radii, ids, 0.05);
        CHECK(got.count == ref.count);
        CHECK(got.argmax == ref.argmax);
    }
}

TEST_CASE("log-sum accumulator") {
    kernels::LogSum a, b;
    for (int i = 0; i < 1000; ++i) (i % 2 ? a : b).add(std::log(1.0 + i));
    a.merge(b);
    CHECK(a.value() == doctest::Approx(std::log(500500.0)).epsilon(1e-14));
    kernels::LogSum empty;
    CHECK(std::isinf(empty.value()));
}
