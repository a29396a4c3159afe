#include <algorithm>
#include <cmath>
#include <set>

#include "fractalab/cutset.hpp"
#include "fractalab/errors.hpp"

namespace fractalab {

namespace {

// Products of ratios and pow() can disagree in the last bit; a cylinder
// exactly at the threshold must count as "<= r".
constexpr double kThresholdSlack = 1e-12;
constexpr int kMaxCutDepth = 512;

class CutWalker {
public:
    CutWalker(const IfsSystem& system, double r, std::uint64_t budget, const CutSetVisitor& visit)
        : system_(system), limit_(r * (1.0 + kThresholdSlack)), budget_(budget), visit_(visit) {}

    void run() {
        if (system_.all_similarities()) {
            walk_similarity(Similarity::identity(system_.dim()));
        } else {
            walk_generic();
        }
    }

private:
    void count_node() {
        if (++visited_ > budget_)
            throw ResourceError("cut_set: more than " + std::to_string(budget_) + " words visited (depth " +
                                    std::to_string(word_.size()) + ")",
                                static_cast<int>(word_.size()));
        if (static_cast<int>(word_.size()) > kMaxCutDepth)
            throw ResourceError("cut_set: depth limit reached", kMaxCutDepth);
    }

    void walk_similarity(const Similarity& sim) {
        count_node();
        const double diam = sim.ratio * system_.attractor_diameter();
        if (diam <= limit_ && !word_.empty()) {
            visit_(word_, diam, &sim);
            return;
        }
        for (int i = 1; i <= system_.size(); ++i) {
            word_.push_back(i);
            walk_similarity(sim.after(*system_.map(i).as_similarity()));
            word_.pop_back();
        }
    }

    void walk_generic() {
        count_node();
        const double diam = word_.empty() ? system_.attractor_diameter() : cylinder_geometry(system_, word_).diameter;
        if (diam <= limit_ && !word_.empty()) {
            visit_(word_, diam, nullptr);
            return;
        }
        for (int i = 1; i <= system_.size(); ++i) {
            word_.push_back(i);
            walk_generic();
            word_.pop_back();
        }
    }

    const IfsSystem& system_;
    double limit_;
    std::uint64_t budget_;
    const CutSetVisitor& visit_;
    Word word_;
    std::uint64_t visited_ = 0;
};

}  // namespace

std::size_t CutSet::max_length() const {
    std::size_t n = 0;
    for (const auto& w : words) n = std::max(n, w.size());
    return n;
}

void for_each_cut_word(const IfsSystem& system, double r, std::uint64_t word_budget, const CutSetVisitor& visit) {
    if (!(r > 0.0) || !(r < system.attractor_diameter()))
        throw InvalidArgumentError("cut_set: need 0 < r < |K| = " + std::to_string(system.attractor_diameter()));
    CutWalker(system, r, word_budget, visit).run();
}

CutSet cut_set(const IfsSystem& system, double r, std::uint64_t word_budget) {
    CutSet out;
    out.threshold = r;
    const Vec& anchor = system.base_point();
    for_each_cut_word(system, r, word_budget, [&](const Word& w, double diam, const Similarity* sim) {
        out.words.push_back(w);
        if (sim) {
            CylinderGeometry g;
            g.word = w;
            g.diameter = diam;
            g.derivative_norm = sim->ratio;
            g.anchor_image = (*sim)(anchor);
            out.geometries.push_back(std::move(g));
        } else {
            out.geometries.push_back(cylinder_geometry(system, w, anchor));
        }
    });
    return out;
}

bool is_prefix_free(std::span<const Word> words) {
    std::vector<Word> sorted(words.begin(), words.end());
    std::sort(sorted.begin(), sorted.end());
    // In lexicographic order a word that prefixes anything prefixes its successor.
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i - 1].is_prefix_of(sorted[i])) return false;
    return true;
}

bool is_exhaustive(std::span<const Word> words, int alphabet) {
    if (words.empty()) return false;
    const std::set<Word> members(words.begin(), words.end());
    std::size_t lmax = 0;
    for (const auto& w : words) lmax = std::max(lmax, w.size());

    // A node is covered when it is a member or all of its children are.
    Word node;
    auto covered = [&](auto&& self) -> bool {
        if (members.count(node)) return true;
        if (node.size() >= lmax) return false;
        for (int i = 1; i <= alphabet; ++i) {
            node.push_back(i);
            const bool ok = self(self);
            node.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    return covered(covered);
}

double product_mass(std::span<const Word> words, std::span<const double> weights) {
    double sum = 0.0, comp = 0.0;
    for (const auto& w : words) {
        double p = 1.0;
        for (int i : w.indices()) p *= weights[static_cast<std::size_t>(i - 1)];
        const double t = sum + p;
        comp += std::abs(sum) >= std::abs(p) ? (sum - t) + p : (p - t) + sum;
        sum = t;
    }
    return sum + comp;
}

}  // namespace fractalab
