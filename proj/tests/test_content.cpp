#include <doctest.h>

#include <cmath>
#include <random>

#include "fractalab/content.hpp"
#include "fractalab/errors.hpp"
#include "systems.hpp"

using namespace fractalab;
using namespace fractalab::testing;

namespace {

const double kCantorDim = std::log(2.0) / std::log(3.0);

Region unit_region() { return {vec1(0.5), 0.5 + 1e-12}; }

PointCloud line_sample(std::size_t n) {
    PointCloud p{1, {}};
    for (std::size_t i = 0; i < n; ++i) p.coords.push_back(static_cast<double>(i) / static_cast<double>(n - 1));
    return p;
}

CoverCase case_from(const EssentialContentEstimate& e) {
    CoverCase c;
    for (const auto& b : e.content.cover) c.diameters.push_back(b.side);
    c.set_diameter = e.content.set_diameter;
    c.s = e.s;
    c.value = e.value;
    c.plain_value = e.plain_value;
    return c;
}

}  // namespace

TEST_CASE("content of a unit interval at s = 1") {
    ContentOptions o;
    o.scale_floor = 1e-3;
    const ContentEstimate e = hausdorff_content_upper(line_sample(5000), 1.0, o);
    CHECK(e.value >= 1.0);
    CHECK(e.value <= 2.0);
    CHECK(e.value <= std::pow(e.set_diameter, 1.0) + 1e-12);
    CHECK(hausdorff_content_upper(line_sample(5000), 0.0, o).value == 1.0);
}

TEST_CASE("content of a point") {
    PointCloud one{2, {0.3, 0.7}};
    PointCloud two{2, {0.3, 0.7, 0.3005, 0.7}};
    for (double floor : {1e-2, 1e-4, 1e-6}) {
        ContentOptions o;
        o.scale_floor = floor;
        CHECK(hausdorff_content_upper(one, 0.5, o).value == 0.0);
        CHECK(hausdorff_content_upper(two, 0.5, o).value <= std::pow(5e-4, 0.5) + 1e-12);
    }
}

TEST_CASE("ball input is covered") {
    PointCloud c{1, {0.0, 1.0}};
    const std::vector<double> r{0.1, 0.1};
    ContentOptions o;
    o.scale_floor = 0.01;
    const ContentEstimate e = hausdorff_content_upper(c, r, 1.0, o);
    double len = 0.0;
    for (const auto& b : e.cover) len += b.side;
    CHECK(len >= 0.4 - 1e-9);
    CHECK(e.value == doctest::Approx(len));
    CHECK_THROWS_AS(hausdorff_content_upper(PointCloud{1, {}}, 1.0, o), InvalidArgumentError);
}

TEST_CASE("cylinder covers at the similarity dimension sum to |K|^s") {
    const ContentEstimate six = cylinder_cover_content(cantor(), kCantorDim, 6);
    CHECK(six.cover.size() == 64);
    CHECK(std::abs(six.value - 64.0 * std::pow(std::pow(3.0, -6), kCantorDim)) <= 1e-12);
    CHECK(six.value >= 0.5);
    CHECK(six.value <= 1.5);
    for (const IfsSystem& sys : {cantor(), half_quarter_quarter(), half_quarter()}) {
        double d = 0.0;
        {
            // Root of sum c_i^s = 1 by bisection, written out here as an independent check.
            const auto r = sys.ratios();
            double lo = 0.0, hi = 5.0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                double sum = 0.0;
                for (double c : r) sum += std::pow(c, mid);
                (sum > 1.0 ? lo : hi) = mid;
            }
            d = 0.5 * (lo + hi);
        }
        for (int k = 1; k <= 10; ++k)
            CHECK(std::abs(cylinder_cover_content(sys, d, k).value - std::pow(sys.attractor_diameter(), d)) <= 1e-10);
    }
}

TEST_CASE("essential content with nothing discarded equals plain content") {
    const auto e = essential_content_estimate(cantor(), uniform_weights(2), unit_region(), kCantorDim, 0.0,
                                              std::pow(3.0, -7), 50000, 1);
    CHECK(e.value == e.plain_value);
    CHECK(e.discarded_boxes == 0);
    CHECK(e.retained_mass == 1.0);
}

TEST_CASE("essential content is at most plain content") {
    for (double s : {0.2, 0.5, 0.63, 0.9}) {
        for (double eta : {0.0, 0.01, 0.05, 0.2}) {
            const auto e = essential_content_estimate(cantor(), uniform_weights(2), unit_region(), s, eta,
                                                      std::pow(3.0, -6), 20000, 2);
            CHECK(e.value <= e.plain_value + 1e-12);
            CHECK(e.retained_mass >= 1.0 - eta - 1e-12);
            CHECK(e.occupied_boxes >= e.discarded_boxes + 1);
        }
    }
}

TEST_CASE("content above the dimension decays under refinement") {
    double prev = 1e300;
    for (int j : {6, 8, 10}) {
        const auto e = essential_content_estimate(cantor(), uniform_weights(2), unit_region(), 0.9, 0.05,
                                                  std::pow(3.0, -j), 200000, 3);
        if (j == 8) CHECK(e.value <= 0.2);
        CHECK(e.value < prev);
        prev = e.value;
    }
}

TEST_CASE("content of small balls below the dimension") {
    const IfsSystem c = cantor();
    const auto centers = attractor_sample(c, uniform_weights(2), 21, 8);
    const double radius = std::pow(3.0, -3);
    for (std::size_t i = 1; i < centers.size(); ++i) {
        const Region b{centers.vec(i), radius};
        const auto e = essential_content_estimate(c, uniform_weights(2), b, 0.3, 0.0, radius / 256, 100000, 4);
        CHECK(e.value >= 0.1 * std::pow(2 * radius, 0.35));
    }
}

TEST_CASE("content scales like |B|^s just below the dimension") {
    const IfsSystem c = cantor();
    const double s = kCantorDim - 0.1;
    const auto centers = attractor_sample(c, uniform_weights(2), 20, 9);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double radius = std::pow(3.0, -1.0 - 0.25 * static_cast<double>(i));
        const Region b{centers.vec(i), radius};
        const auto e = essential_content_estimate(c, uniform_weights(2), b, s, 0.0, radius / 512, 200000, 5);
        x.push_back(std::log(2 * radius));
        y.push_back(std::log(e.value));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
    const double slope = sxy / sxx;
    MESSAGE("content slope " << slope << " at s = " << s);
    CHECK(slope >= s);
    CHECK(slope <= s + 0.15);
}

TEST_CASE("half-cell grid shift changes content by at most 2^s") {
    const auto pts = attractor_sample(half_quarter_quarter(), uniform_weights(3), 20000, 6);
    for (double s : {0.3, 0.7, 1.0}) {
        ContentOptions a, b;
        a.scale_floor = b.scale_floor = 1e-3;
        b.shift = 0.5;
        const double va = hausdorff_content_upper(pts, s, a).value;
        const double vb = hausdorff_content_upper(pts, s, b).value;
        CHECK(std::abs(std::log(va) - std::log(vb)) <= s * std::log(2.0) + 1e-12);
    }
}

TEST_CASE("calculus checks on generated covers") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<IfsSystem> systems{cantor(), twin(), half_quarter_quarter(), thirds()};
    std::vector<CoverCase> cases;
    for (int i = 0; i < 100; ++i) {
        const IfsSystem& sys = systems[static_cast<std::size_t>(i) % systems.size()];
        const double s = 1.2 * u(rng);
        const double eta = 0.2 * u(rng);
        const double grid = std::pow(2.0, -4.0 - 6.0 * u(rng));
        cases.push_back(case_from(essential_content_estimate(sys, uniform_weights(sys.size()), unit_region(), s, eta, grid, 5000,
                                                             static_cast<std::uint64_t>(i))));
    }
    std::vector<double> s_grid;
    for (int j = 0; j < 20; ++j) s_grid.push_back(0.075 * j);
    const std::vector<double> deltas{1.0, 1.5, 2.0, 4.0};
    const CalculusReport rep = content_calculus_check(cases, s_grid, deltas);
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.ok());
    CHECK(rep.checks > 100 * 80);
}

TEST_CASE("calculus checker catches violations") {
    CoverCase bad;
    bad.diameters = {0.5, 0.5};
    bad.set_diameter = 1.0;
    bad.s = 0.5;
    bad.value = 2.0;  // above |A|^s = 1
    bad.plain_value = 2.0;
    const std::vector<double> grid{0.0, 0.5, 1.0};
    const std::vector<double> deltas{1.0, 2.0};
    const CalculusReport rep = content_calculus_check(std::span<const CoverCase>(&bad, 1), grid, deltas);
    CHECK_FALSE(rep.ok());
    CHECK(rep.failures.size() == 1);
}

TEST_CASE("essential content preconditions") {
    CHECK_THROWS_AS(essential_content_estimate(cantor(), uniform_weights(2), unit_region(), 0.5, 0.3, 0.01, 100, 1),
                    InvalidArgumentError);
    CHECK_THROWS_AS(essential_content_estimate(cantor(), uniform_weights(2), Region{vec1(0.5), 0.1}, 0.5, 0.0, 0.01, 1000, 1),
                    ZeroMassError);
}
