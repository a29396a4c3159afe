#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fractalab/errors.hpp"
#include "fractalab/ifs_io.hpp"
#include "systems.hpp"

using namespace fractalab;
using namespace fractalab::testing;

namespace {

// Random word of the given length over {1..m}.
Word random_word(std::mt19937_64& rng, int m, int length) {
    std::uniform_int_distribution<int> pick(1, m);
    Word w;
    for (int i = 0; i < length; ++i) w.push_back(pick(rng));
    return w;
}

}  // namespace

TEST_CASE("word basics") {
    const Word w{1, 2, 2};
    CHECK(w.to_string() == "1.2.2");
    CHECK(Word{}.to_string() == "()");
    CHECK(w.parent() == Word{1, 2});
    CHECK(w.shift() == Word{2, 2});
    CHECK(Word{1, 2}.is_prefix_of(w));
    CHECK_FALSE(Word{2}.is_prefix_of(w));
    CHECK(w.concat(Word{3}) == Word{1, 2, 2, 3});
    for (std::uint64_t r = 0; r < 27; ++r) CHECK(Word::from_rank(r, 3, 3).rank(3) == r);
    CHECK(Word{1, 1} < Word{1, 2});
    CHECK(Word{1} < Word{1, 1});
}

TEST_CASE("composition by hand") {
    const IfsSystem c = cantor();
    const ComposedMap f12 = compose_word(c, Word{1, 2});
    REQUIRE(f12.is_similarity());
    for (double x : {-0.5, 0.0, 0.3, 1.0, 1.7}) CHECK(f12(vec1(x))[0] == doctest::Approx(x / 9 + 2.0 / 9).epsilon(1e-15));

    const ComposedMap f22 = compose_word(twin(), Word{2, 2});
    for (double x : {0.0, 0.25, 1.0}) CHECK(f22(vec1(x))[0] == doctest::Approx(x / 4 + 0.75).epsilon(1e-15));

    const ComposedMap id = compose_word(c, Word{});
    CHECK(id(vec1(0.7))[0] == 0.7);
    CHECK_THROWS_AS(compose_word(c, Word{1, 3}), InvalidWordError);
    CHECK_THROWS_AS(compose_word(c, Word{0}), InvalidWordError);
}

TEST_CASE("composition agrees with successive application") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 0.9);
    for (const IfsSystem& sys : {rotations(), half_quarter_quarter()}) {
        for (int trial = 0; trial < 10; ++trial) {
            const Word a = random_word(rng, sys.size(), 1 + trial % 4);
            const Word b = random_word(rng, sys.size(), 1 + trial % 3);
            const ComposedMap fab = compose_word(sys, a.concat(b));
            const ComposedMap fa = compose_word(sys, a);
            const ComposedMap fb = compose_word(sys, b);
            for (int p = 0; p < 100; ++p) {
                Vec x(sys.dim());
                for (int i = 0; i < sys.dim(); ++i) x[i] = u(rng);
                CHECK((fab(x) - fa(fb(x))).norm() <= 1e-10);
            }
        }
    }
}

TEST_CASE("cylinder diameters") {
    const IfsSystem c = cantor();
    CHECK(c.attractor_diameter() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.diameter_method() == DiameterMethod::ExactFixedPoint);
    CHECK(cylinder_geometry(c, Word{1, 2, 2, 1}).diameter == doctest::Approx(std::pow(3.0, -4)).epsilon(1e-14));
    CHECK(cylinder_geometry(c, Word{}).diameter == doctest::Approx(1.0).epsilon(1e-14));

    const IfsSystem t = twin();
    std::mt19937_64 rng(3);
    for (int k = 1; k <= 12; ++k)
        CHECK(cylinder_geometry(t, random_word(rng, 2, k)).diameter == std::ldexp(1.0, -k));
}

TEST_CASE("similarity diameters are multiplicative") {
    const IfsSystem s = half_quarter_quarter();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const Word a = random_word(rng, 3, 1 + i % 5);
        const Word b = random_word(rng, 3, 1 + i % 7);
        const double k = s.attractor_diameter();
        const double lhs = cylinder_geometry(s, a.concat(b)).diameter * k;
        const double rhs = cylinder_geometry(s, a).diameter * cylinder_geometry(s, b).diameter;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
}

TEST_CASE("generic diameters are quasi-multiplicative") {
    const IfsSystem s = rotations();
    std::mt19937_64 rng(12);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Word a = random_word(rng, 3, 1 + i % 6);
        const Word b = random_word(rng, 3, 1 + i % 5);
        const double ratio = cylinder_geometry(s, a.concat(b)).diameter * s.attractor_diameter() /
                             (cylinder_geometry(s, a).diameter * cylinder_geometry(s, b).diameter);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    MESSAGE("quasi-multiplicativity ratio range [" << lo << ", " << hi << "]");
    const double c = std::max(hi, 1.0 / lo);
    CHECK(c < 1.0 + 1e-9);  // linear conformal parts: exact up to rounding
}

TEST_CASE("geometric decay of the largest cylinder") {
    for (const IfsSystem& sys : {half_quarter_quarter(), rotations()}) {
        const double beta = sys.max_contraction();
        for (int k = 1; k <= 14; ++k) {
            double biggest = 0.0;
            const int m = sys.size();
            if (std::pow(m, k) > 2e5) {
                // The largest cylinder at depth k is the all-largest-ratio word for these systems.
                std::vector<int> idx(static_cast<std::size_t>(k), 1);
                biggest = cylinder_geometry(sys, Word(idx)).diameter;
            } else {
                for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(std::pow(m, k)); ++r)
                    biggest = std::max(biggest, cylinder_geometry(sys, Word::from_rank(r, static_cast<std::size_t>(k), m)).diameter);
            }
            CHECK(biggest <= sys.attractor_diameter() * std::pow(beta, k) * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("chaos game on the Cantor set avoids the middle gap") {
    const IfsSystem c = cantor();
    const auto pts = attractor_sample(c, uniform_weights(2), 10000, 5);
    REQUIRE(pts.size() == 10000);
    const double h = 1e-3;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = pts.point(i)[0];
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
        CHECK_FALSE((x > 1.0 / 3 + h && x < 2.0 / 3 - h));
    }
}

TEST_CASE("chaos game on the twin system is uniform") {
    const auto pts = attractor_sample(twin(), uniform_weights(2), 10000, 9);
    double mean = 0.0;
    for (double x : pts.coords) mean += x;
    mean /= 10000.0;
    const double sigma = std::sqrt(1.0 / 12.0 / 10000.0);
    CHECK(std::abs(mean - 0.5) <= 3 * sigma);
}

TEST_CASE("chaos game preconditions and determinism") {
    const IfsSystem c = cantor();
    const std::vector<double> bad{1.0, 0.0};
    CHECK_THROWS_AS(attractor_sample(c, bad, 10, 1), InvalidWeightsError);
    CHECK_THROWS_AS(attractor_sample(c, uniform_weights(2), 0, 1), InvalidArgumentError);
    const auto a = attractor_sample(c, uniform_weights(2), 5000, 42);
    const auto b = attractor_sample(c, uniform_weights(2), 5000, 42);
    CHECK(a.coords == b.coords);
    const BoundingBall& ball = c.bounding_ball();
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(ball.contains(a.vec(i)));
}

TEST_CASE("sample points lie near depth-10 cylinders") {
    const IfsSystem s = half_quarter_quarter();
    const auto pts = attractor_sample(s, uniform_weights(3), 2000, 4);
    std::vector<double> anchors;
    double max_diam = 0.0;
    const Vec left = vec1(s.attractor_interval()->first);
    for (std::uint64_t r = 0; r < 59049; ++r) {
        const Word w = Word::from_rank(r, 10, 3);
        const auto g = cylinder_geometry(s, w, left);
        anchors.push_back(g.anchor_image[0]);
        max_diam = std::max(max_diam, g.diameter);
    }
    std::sort(anchors.begin(), anchors.end());
    for (double x : pts.coords) {
        auto it = std::lower_bound(anchors.begin(), anchors.end(), x);
        double d = 1e300;
        if (it != anchors.end()) d = std::min(d, *it - x);
        if (it != anchors.begin()) d = std::min(d, x - *std::prev(it));
        CHECK(d <= max_diam + 1e-12);
    }
}

TEST_CASE("attractor diameter of the Sierpinski triangle") {
    const IfsSystem s = load_ifs(gallery("sierpinski.json"));
    CHECK(s.diameter_method() == DiameterMethod::Sampled);
    CHECK(s.attractor_diameter() == doctest::Approx(1.0).epsilon(0.01));
    CHECK(s.attractor_diameter() <= 1.0 + 1e-12);
}

TEST_CASE("degenerate and non-contracting systems are rejected") {
    CHECK_THROWS_AS(line_system({0.5, 0.5}, {0.0, 0.0}), DegenerateSystemError);
    CHECK_THROWS_AS(ContractionMap::similarity_1d(1.1, 0.0), ContractionError);
    CHECK_THROWS_AS(ContractionMap::similarity_1d(0.0, 0.0), ContractionError);
    // Maps the ball outside itself.
    CHECK_THROWS_AS(line_system({0.5, 0.5}, {0.0, 5.0}), ContractionError);
    Mat skew(2, 2);
    skew << 1.0, 0.1, 0.0, 1.0;
    CHECK_THROWS_AS(ContractionMap::similarity(0.5, skew, vec2(0, 0)), ContractionError);
}

TEST_CASE("IFS parsing errors carry positions and pointers") {
    try {
        parse_ifs(std::string_view("{\"dim\": 1,\n  \"maps\": [ oops ]}"));
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    try {
        parse_ifs(std::string_view(R"({"dim": 1, "maps": [{"kind": "similarity", "ratio": "x", "translation": 0},
            {"kind": "similarity", "ratio": 0.5, "translation": 0.5}], "bounding_ball": {"center": 0.5, "radius": 1}})"));
        FAIL("no throw");
    } catch (const InvalidArgumentError& e) {
        CHECK(std::string(e.what()).find("/maps/0/ratio") != std::string::npos);
    }
}

TEST_CASE("IFS JSON round trip") {
    for (const char* name : {"cantor.json", "twin.json", "half_quarter_quarter.json", "conformal_rotations.json"}) {
        const IfsSystem a = load_ifs(gallery(name));
        const IfsSystem b = parse_ifs(ifs_to_json(a));
        CHECK(ifs_to_json(b).dump() == ifs_to_json(a).dump());
        CHECK(b.attractor_diameter() == a.attractor_diameter());
    }
}

TEST_CASE("expressions") {
    const Expression e = Expression::parse("2*x1^2 - sin(pi/2) + exp(0)/x2", 2);
    const std::vector<double> x{3.0, 4.0};
    CHECK(e(x) == doctest::Approx(18.0 - 1.0 + 0.25));
    CHECK_THROWS_AS(Expression::parse("x3", 2), ParseError);
    CHECK_THROWS_AS(Expression::parse("1 +", 1), ParseError);
}
