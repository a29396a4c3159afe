#include <algorithm>
#include <cmath>
#include <numeric>

#include "fractalab/cutset.hpp"
#include "fractalab/errors.hpp"
#include "fractalab/kernels.hpp"
#include "fractalab/text.hpp"

namespace fractalab {

namespace {

constexpr double kSimilarityTol = 1e-12;
constexpr double kProbeTol = 1e-9;

struct Signatures {
    std::vector<std::vector<double>> rows;
    double tol = 0.0;
    bool relative = false;
};

std::vector<Vec> probe_points(const IfsSystem& system) {
    const BoundingBall& ab = system.attractor_ball();
    Vec off = ab.center;
    off[0] += 0.5 * ab.radius;
    return {system.base_point(), ab.center, off};
}

Signatures signatures_of(const IfsSystem& system, std::span<const Word> words) {
    Signatures out;
    out.rows.resize(words.size());
    if (system.all_similarities()) {
        out.tol = kSimilarityTol;
        out.relative = true;
        for (std::size_t i = 0; i < words.size(); ++i) {
            const ComposedMap f = compose_word(system, words[i]);
            const Similarity& s = f.similarity();
            auto& row = out.rows[i];
            row.push_back(s.ratio);
            row.insert(row.end(), s.isometry.data(), s.isometry.data() + s.isometry.size());
            row.insert(row.end(), s.translation.data(), s.translation.data() + s.translation.size());
        }
    } else {
        out.tol = kProbeTol;
        const auto probes = probe_points(system);
        for (std::size_t i = 0; i < words.size(); ++i) {
            const ComposedMap f = compose_word(system, words[i]);
            for (const Vec& p : probes) {
                const Vec y = f(p);
                out.rows[i].insert(out.rows[i].end(), y.data(), y.data() + y.size());
            }
        }
    }
    return out;
}

bool close(double a, double b, const Signatures& sig) {
    const double scale = sig.relative ? std::max({1.0, std::abs(a), std::abs(b)}) : 1.0;
    return std::abs(a - b) <= sig.tol * scale;
}

bool same_map(const std::vector<double>& a, const std::vector<double>& b, const Signatures& sig) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!close(a[i], b[i], sig)) return false;
    return true;
}

std::vector<int> classes_of(const Signatures& sig) {
    const std::size_t n = sig.rows.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sig.rows[a] < sig.rows[b]; });
    std::vector<int> ids(n, -1);
    int next = 0;
    for (std::size_t p = 0; p < n; ++p) {
        const auto& row = sig.rows[order[p]];
        // Look back over rows whose leading entry is within tolerance.
        for (std::size_t q = p; q-- > 0;) {
            const auto& prev = sig.rows[order[q]];
            if (!close(prev[0], row[0], sig)) break;
            if (same_map(prev, row, sig)) {
                ids[order[p]] = ids[order[q]];
                break;
            }
        }
        if (ids[order[p]] < 0) ids[order[p]] = next++;
    }
    // Renumber by first appearance so ids follow word order.
    std::vector<int> remap(static_cast<std::size_t>(next), -1);
    int fresh = 0;
    for (auto& id : ids) {
        auto& r = remap[static_cast<std::size_t>(id)];
        if (r < 0) r = fresh++;
        id = r;
    }
    return ids;
}

}  // namespace

std::vector<int> map_identity_classes(const IfsSystem& system, std::span<const Word> words) {
    if (words.empty()) return {};
    return classes_of(signatures_of(system, words));
}

AwscReport awsc_statistic(const IfsSystem& system, int k, CenterPlan plan, std::uint64_t word_budget) {
    if (k < 1) throw InvalidArgumentError("awsc_statistic: k must be at least 1");
    const double r = std::ldexp(1.0, -k);
    const CutSet cs = cut_set(system, r, word_budget);
    const std::size_t n = cs.size();
    const int d = system.dim();

    // Regions containing each cylinder f_w(K).
    PointCloud centers{d, {}};
    std::vector<double> radii(n);
    const auto hull = system.attractor_interval();
    for (std::size_t i = 0; i < n; ++i) {
        const ComposedMap f = compose_word(system, cs.words[i]);
        if (hull && f.is_similarity()) {
            const auto [a, b] = *hull;
            Vec mid(1);
            mid[0] = 0.5 * (a + b);
            centers.push_back(f(mid));
            radii[i] = f.similarity().ratio * 0.5 * (b - a);
        } else {
            const BoundingBall& ab = system.attractor_ball();
            centers.push_back(f(ab.center));
            radii[i] = cs.geometries[i].derivative_norm * ab.radius;
        }
    }

    PointCloud candidates{d, {}};
    std::vector<std::size_t> by_x(n);
    std::iota(by_x.begin(), by_x.end(), 0);
    for (std::size_t i = 0; i < n; ++i) candidates.push_back(cs.geometries[i].anchor_image);
    if (plan == CenterPlan::AnchorsAndMidpoints) {
        std::sort(by_x.begin(), by_x.end(), [&](std::size_t a, std::size_t b) {
            const double xa = cs.geometries[a].anchor_image[0], xb = cs.geometries[b].anchor_image[0];
            return xa != xb ? xa < xb : a < b;
        });
        for (std::size_t p = 0; p < n; ++p) {
            const Vec& a = cs.geometries[by_x[p]].anchor_image;
            for (std::size_t q = p + 1; q < n; ++q) {
                const Vec& b = cs.geometries[by_x[q]].anchor_image;
                if (b[0] - a[0] > 2.0 * r) break;
                if ((b - a).norm() <= 2.0 * r) candidates.push_back(Vec(0.5 * (a + b)));
            }
        }
    }

    const auto ids = map_identity_classes(system, cs.words);
    const auto best = kernels::max_distinct_overlap(candidates, centers, radii, ids, r);

    AwscReport rep;
    rep.k = k;
    rep.t_k = best.count;
    rep.argmax_center = candidates.vec(best.argmax);
    rep.distinct_maps = ids.empty() ? 0 : static_cast<std::size_t>(*std::max_element(ids.begin(), ids.end()) + 1);
    rep.cut_set_size = n;
    return rep;
}

std::vector<std::pair<Word, Word>> exact_overlap_scan(const IfsSystem& system, int depth, std::uint64_t word_budget) {
    if (depth < 1) throw InvalidArgumentError("exact_overlap_scan: depth must be at least 1");
    std::uint64_t total = 0;
    for (int l = 1; l <= depth; ++l) {
        const std::uint64_t c = word_count(system.size(), l);
        total = c > UINT64_MAX - total ? UINT64_MAX : total + c;
    }
    if (total > word_budget)
        throw ResourceError("exact_overlap_scan: " + std::to_string(total) + " words exceed the budget of " +
                                std::to_string(word_budget),
                            max_depth_within(system.size(), word_budget));

    std::vector<std::pair<Word, Word>> pairs;
    for (int l = 1; l <= depth; ++l) {
        const std::uint64_t count = word_count(system.size(), l);
        std::vector<Word> words;
        words.reserve(count);
        for (std::uint64_t r = 0; r < count; ++r) words.push_back(Word::from_rank(r, static_cast<std::size_t>(l), system.size()));
        const auto ids = map_identity_classes(system, words);
        std::vector<std::vector<std::size_t>> groups(words.size());
        for (std::size_t i = 0; i < words.size(); ++i) groups[static_cast<std::size_t>(ids[i])].push_back(i);
        for (const auto& g : groups)
            for (std::size_t a = 0; a < g.size(); ++a)
                for (std::size_t b = a + 1; b < g.size(); ++b) pairs.emplace_back(words[g[a]], words[g[b]]);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

std::string awsc_csv(std::span<const AwscReport> reports) {
    std::string out = "k,cut_set_size,t_k,log_t_k_over_k\n";
    for (const auto& r : reports) {
        out += std::to_string(r.k) + "," + std::to_string(r.cut_set_size) + "," + std::to_string(r.t_k) + "," +
               format_number(std::log(static_cast<double>(r.t_k)) / r.k) + "\n";
    }
    return out;
}

}  // namespace fractalab
