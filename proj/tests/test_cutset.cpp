#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <numeric>
#include <set>

#include "fractalab/cutset.hpp"
#include "fractalab/errors.hpp"
#include "systems.hpp"

using namespace fractalab;
using namespace fractalab::testing;

namespace {

// Brute-force sup over all real x of the number of distinct maps whose
// cylinder interval meets [x - r, x + r], r = 2^-k, for a 1-D system with
// equal ratios c and translations t_i. Level-n words with
// c^n |K| <= r < c^(n-1) |K| form the cut set. The sup is attained at
// some expanded left endpoint L_j - r. Maps are told apart by translation.
int sup_t_k(double c, const std::vector<double>& shifts, double hull_lo, double hull_len, int k) {
    const double r = std::ldexp(1.0, -k);
    int n = 0;
    while (std::pow(c, n) * hull_len > r) ++n;
    const int m = static_cast<int>(shifts.size());
    std::vector<std::pair<double, double>> maps;  // (translation, left endpoint)
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    while (true) {
        double b = 0.0, scale = 1.0;
        for (int j : digits) {
            b += scale * shifts[static_cast<std::size_t>(j)];
            scale *= c;
        }
        maps.emplace_back(b, b + scale * hull_lo);
        int pos = n - 1;
        while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == m) digits[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    const double len = std::pow(c, n) * hull_len;
    std::vector<double> cands;
    for (const auto& [b, left] : maps) cands.push_back(left - r);
    int best = 0;
    for (double x : cands) {
        std::vector<double> hit;
        for (const auto& [b, left] : maps)
            if (left <= x + r + 1e-12 && left + len >= x - r - 1e-12) hit.push_back(b);
        std::sort(hit.begin(), hit.end());
        int distinct = 0;
        for (std::size_t i = 0; i < hit.size(); ++i)
            if (i == 0 || hit[i] - hit[i - 1] > 1e-12) ++distinct;
        best = std::max(best, distinct);
    }
    return best;
}

}  // namespace

TEST_CASE("cut sets by hand") {
    const CutSet c = cut_set(cantor(), std::pow(3.0, -4));
    CHECK(c.size() == 16);
    for (const Word& w : c.words) CHECK(w.size() == 4);

    const CutSet h = cut_set(half_quarter(), 0.25);
    REQUIRE(h.size() == 3);
    CHECK(h.words[0] == Word{1, 1});
    CHECK(h.words[1] == Word{1, 2});
    CHECK(h.words[2] == Word{2});
    CHECK(h.max_length() == 2);

    CHECK_THROWS_AS(cut_set(cantor(), 0.0), InvalidArgumentError);
    CHECK_THROWS_AS(cut_set(cantor(), 1.5), InvalidArgumentError);
    CHECK_THROWS_AS(cut_set(cantor(), 1e-9, 1000), ResourceError);
}

TEST_CASE("random cut sets are exhaustive antichains of full mass") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<IfsSystem> systems{cantor(), twin(), half_quarter_quarter(), half_quarter(), thirds(), rotations()};
    for (int trial = 0; trial < 50; ++trial) {
        const IfsSystem& sys = systems[static_cast<std::size_t>(trial) % systems.size()];
        const double r = sys.attractor_diameter() * std::pow(10.0, -0.3 - 3.0 * u(rng));
        const CutSet cs = cut_set(sys, r);
        CHECK(is_prefix_free(cs.words));
        CHECK(is_exhaustive(cs.words, sys.size()));
        CHECK(std::is_sorted(cs.words.begin(), cs.words.end()));
        for (std::size_t i = 0; i < cs.size(); ++i) {
            CHECK(cs.geometries[i].diameter <= r * (1 + 1e-12));
            CHECK(cylinder_geometry(sys, cs.words[i].parent()).diameter > r);
        }
        std::vector<double> p(static_cast<std::size_t>(sys.size()));
        for (double& x : p) x = 0.1 + u(rng);
        const double total = std::accumulate(p.begin(), p.end(), 0.0);
        for (double& x : p) x /= total;
        CHECK(std::abs(product_mass(cs.words, p) - 1.0) <= 1e-12);
    }
}

TEST_CASE("mass of a partial antichain stays below one") {
    const CutSet cs = cut_set(half_quarter_quarter(), 0.01);
    std::vector<Word> part(cs.words.begin(), cs.words.begin() + static_cast<std::ptrdiff_t>(cs.size() / 2));
    const std::vector<double> p{0.2, 0.3, 0.5};
    CHECK(product_mass(part, p) < 1.0);
    CHECK_FALSE(is_exhaustive(part, 3));
    std::vector<Word> with_prefix{Word{1}, Word{1, 2}};
    CHECK_FALSE(is_prefix_free(with_prefix));
}

TEST_CASE("finer cut sets nest inside coarser ones") {
    for (const IfsSystem& sys : {half_quarter_quarter(), rotations()}) {
        const CutSet coarse = cut_set(sys, 0.05 * sys.attractor_diameter());
        const CutSet fine = cut_set(sys, 0.004 * sys.attractor_diameter());
        for (const Word& w : fine.words) {
            int prefixes = 0;
            for (const Word& v : coarse.words) prefixes += v.is_prefix_of(w) ? 1 : 0;
            CHECK(prefixes == 1);
        }
    }
}

TEST_CASE("visitor sees the same words as cut_set") {
    const IfsSystem sys = half_quarter_quarter();
    const CutSet cs = cut_set(sys, 0.003);
    std::vector<Word> seen;
    for_each_cut_word(sys, 0.003, default_word_budget(), [&](const Word& w, double, const Similarity* f) {
        CHECK(f != nullptr);
        seen.push_back(w);
    });
    CHECK(seen == cs.words);
}

TEST_CASE("AWSC statistic on the Cantor set against the exact supremum") {
    for (int k = 4; k <= 10; ++k) {
        const AwscReport r = awsc_statistic(cantor(), k);
        const int sup = sup_t_k(1.0 / 3, {0.0, 2.0 / 3}, 0.0, 1.0, k);
        CHECK(r.k == k);
        CHECK(r.t_k >= 1);
        CHECK(r.t_k <= sup);
        CHECK(sup <= 3);
    }
    CHECK(awsc_statistic(cantor(), 6).t_k <= 3);
}

TEST_CASE("AWSC bounded overlap for separated systems") {
    for (const IfsSystem& sys : {cantor(), half_quarter_quarter(), twin()}) {
        const int t4 = awsc_statistic(sys, 4).t_k;
        for (int k = 5; k <= 12; ++k) CHECK(awsc_statistic(sys, k).t_k <= t4 + 2);
    }
}

TEST_CASE("duplicated maps count once") {
    const IfsSystem dup = line_system({0.5, 0.5, 0.5}, {0.0, 0.0, 0.5});
    for (int k = 2; k <= 6; ++k) {
        const AwscReport a = awsc_statistic(dup, k);
        const AwscReport b = awsc_statistic(twin(), k);
        CHECK(a.t_k == b.t_k);
        CHECK(a.t_k <= sup_t_k(0.5, {0.0, 0.5}, 0.0, 1.0, k));
        CHECK(a.distinct_maps == b.distinct_maps);
        CHECK(a.cut_set_size > b.cut_set_size);
    }
}

TEST_CASE("exact overlap scan") {
    CHECK(exact_overlap_scan(twin(), 4).empty());
    const auto pairs = exact_overlap_scan(line_system({0.5, 0.5, 0.5}, {0.0, 0.0, 0.5}), 1);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].first == Word{1});
    CHECK(pairs[0].second == Word{2});

    // Base-3 digit expansions are unique, so no two words of {x/3 + j/3} coincide.
    std::set<long> seen;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) seen.insert(9L * a + 3L * b + c);
    REQUIRE(seen.size() == 27);
    CHECK(exact_overlap_scan(thirds(), 3).empty());

    // {x/2, x/4, x/4 + 1/2}: f1 f2 = x/8 = f2 f1.
    const auto mixed = exact_overlap_scan(line_system({0.5, 0.25, 0.25}, {0.0, 0.0, 0.5}), 2);
    CHECK(std::find(mixed.begin(), mixed.end(), std::make_pair(Word{1, 2}, Word{2, 1})) != mixed.end());
}

TEST_CASE("map identity classes") {
    const IfsSystem dup = line_system({0.5, 0.5, 0.5}, {0.0, 0.0, 0.5});
    const std::vector<Word> words{Word{3}, Word{1}, Word{2}, Word{1, 3}, Word{2, 3}};
    const auto ids = map_identity_classes(dup, words);
    CHECK(ids == std::vector<int>{0, 1, 1, 2, 2});

    const IfsSystem rot = rotations();
    const std::vector<Word> rw{Word{1, 2}, Word{2, 1}, Word{1, 2}};
    const auto rid = map_identity_classes(rot, rw);
    CHECK(rid[0] == rid[2]);
    CHECK(rid[0] != rid[1]);
}

TEST_CASE("AWSC csv") {
    std::vector<AwscReport> rows{awsc_statistic(cantor(), 4), awsc_statistic(cantor(), 5)};
    const std::string csv = awsc_csv(rows);
    CHECK(csv.rfind("k,cut_set_size,t_k,log_t_k_over_k\n4,8,2,", 0) == 0);
}
