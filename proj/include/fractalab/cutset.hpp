#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fractalab/budget.hpp"
#include "fractalab/ifs.hpp"

namespace fractalab {

/// Minimal words whose cylinder diameter first drops to or below a threshold:
/// diameter(w) <= r < diameter(parent(w)).
struct CutSet {
    double threshold = 0.0;
    std::vector<Word> words;  ///< lexicographic order
    std::vector<CylinderGeometry> geometries;

    std::size_t size() const noexcept { return words.size(); }
    std::size_t max_length() const;
};

/// Depth-first: descend while diameter > r, emit the first word with
/// diameter <= r. Requires 0 < r < |K|. Throws ResourceError when more than
/// `word_budget` tree nodes would be visited.
CutSet cut_set(const IfsSystem& system, double r, std::uint64_t word_budget = default_word_budget());

/// Visits the cut-set words in lexicographic order without storing them.
/// `similarity` is the composed map for similarity systems, null otherwise.
using CutSetVisitor = std::function<void(const Word& word, double diameter, const Similarity* similarity)>;
void for_each_cut_word(const IfsSystem& system, double r, std::uint64_t word_budget, const CutSetVisitor& visit);

bool is_prefix_free(std::span<const Word> words);
/// Every word of length max_length + 1 has at least one prefix in `words`.
bool is_exhaustive(std::span<const Word> words, int alphabet);

/// Sum over the words of prod_j weights[w_j], compensated.
double product_mass(std::span<const Word> words, std::span<const double> weights);

/// Asymptotically-weak-separation statistic at level k (radius 2^-k).
struct AwscReport {
    int k = 0;
    int t_k = 0;
    Vec argmax_center;
    std::size_t distinct_maps = 0;
    std::size_t cut_set_size = 0;
};

enum class CenterPlan {
    /// Cylinder anchors plus midpoints of anchor pairs within 2 * 2^-k.
    AnchorsAndMidpoints,
    AnchorsOnly,
};

/// t_k = max over candidate centers x of the number of distinct maps f_w,
/// w in the cut-set at 2^-k, whose cylinder meets B(x, 2^-k). Cylinders are
/// the exact hull image for 1-D similarity systems and a covering ball
/// otherwise. Maps are identified by their parameters (similarities, to
/// 1e-12) or by their images of three probe points (to 1e-9).
AwscReport awsc_statistic(const IfsSystem& system, int k, CenterPlan plan = CenterPlan::AnchorsAndMidpoints,
                          std::uint64_t word_budget = default_word_budget());

/// All unordered pairs of distinct words of equal length <= depth that
/// define the same map.
std::vector<std::pair<Word, Word>> exact_overlap_scan(const IfsSystem& system, int depth,
                                                      std::uint64_t word_budget = default_word_budget());

/// Map-identity classes: ids[i] is shared by words defining the same map.
std::vector<int> map_identity_classes(const IfsSystem& system, std::span<const Word> words);

/// "k,cut_set_size,t_k,log_t_over_k" rows.
std::string awsc_csv(std::span<const AwscReport> reports);

}  // namespace fractalab
