#include <algorithm>
#include <optional>

#include "fractalab/budget.hpp"
#include "fractalab/cutset.hpp"
#include "fractalab/errors.hpp"
#include "fractalab/ifs_io.hpp"
#include "fractalab/runner.hpp"
#include "fractalab/targets.hpp"

namespace fractalab {

std::string to_string(Diagnostic::Severity s) {
    switch (s) {
        case Diagnostic::Severity::Error: return "error";
        case Diagnostic::Severity::Warning: return "warning";
        default: return "note";
    }
}

namespace {

// First-level hull images of a 1-D similarity system with disjoint interiors.
bool first_level_disjoint(const IfsSystem& sys) {
    const auto hull = sys.attractor_interval();
    if (!hull) return false;
    std::vector<std::pair<double, double>> iv;
    for (const auto& f : sys.maps()) {
        Vec a(1), b(1);
        a[0] = hull->first;
        b[0] = hull->second;
        const double x = f(a)[0], y = f(b)[0];
        iv.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(iv.begin(), iv.end());
    for (std::size_t i = 1; i < iv.size(); ++i)
        if (iv[i].first < iv[i - 1].second) return false;
    return true;
}

}  // namespace

std::vector<Diagnostic> validate(const ExperimentConfig& config) {
    using S = Diagnostic::Severity;
    std::vector<Diagnostic> out;
    auto add = [&](S s, std::string m) { out.push_back({s, std::move(m)}); };

    std::optional<long> kmax;
    try {
        const auto params = resolve_params(config.command, config.params);
        if (params.contains("kmax") && params["kmax"].get<long>() > 0) kmax = params["kmax"].get<long>();
    } catch (const std::exception& e) {
        add(S::Error, e.what());
    }

    std::optional<IfsSystem> sys;
    try {
        sys.emplace(load_ifs(config.ifs));
    } catch (const ParseError& e) {
        add(S::Error, std::string("parse: ") + e.what());
    } catch (const ContractionError& e) {
        add(S::Error, std::string("contraction: ") + e.what());
    } catch (const DegenerateSystemError& e) {
        add(S::Error, std::string("degenerate: ") + e.what());
    } catch (const std::exception& e) {
        add(S::Error, std::string("schema: ") + e.what());
    }
    if (!sys) return out;

    const std::uint64_t budget = default_word_budget();
    add(S::Note, std::to_string(sys->size()) + " maps in dimension " + std::to_string(sys->dim()) + ", |K| = " +
                     std::to_string(sys->attractor_diameter()) + " (" + to_string(sys->diameter_method()) + ")");
    add(S::Note, "enumeration budget " + std::to_string(budget) + " words allows depth " +
                     std::to_string(max_depth_within(sys->size(), budget)));
    if (kmax) {
        const std::uint64_t words = word_count(sys->size(), static_cast<int>(*kmax));
        if (words > budget)
            add(S::Error, "budget projection: " + std::to_string(sys->size()) + "^" + std::to_string(*kmax) + " = " +
                              (words == UINT64_MAX ? std::string("more than 2^64") : std::to_string(words)) +
                              " words exceeds the cap of " + std::to_string(budget));
    }

    if (!sys->all_similarities()) {
        add(S::Warning, "non-similarity maps: diameters use the derivative-norm proxy and pressure brackets are heuristic");
    } else {
        if (first_level_disjoint(*sys)) add(S::Note, "first-level cylinders are disjoint: open set condition holds");
        try {
            const BakerConfig b = baker_sg(*sys, GSpec::constant());
            add(S::Note, std::string("ratio condition: entropy branch ") + (b.entropy_branch ? "holds" : "fails") +
                             ", equal-ratio branch " + (b.equal_ratio_branch ? "holds" : "fails"));
        } catch (const std::exception& e) {
            add(S::Warning, std::string("ratio condition not evaluated: ") + e.what());
        }
    }
    try {
        const int depth = std::max(1, std::min(4, max_depth_within(sys->size(), 1u << 12)));
        const auto pairs = exact_overlap_scan(*sys, depth, budget);
        if (pairs.empty()) {
            add(S::Note, "no exact overlaps up to depth " + std::to_string(depth));
        } else {
            add(S::Warning, std::to_string(pairs.size()) + " exact overlaps up to depth " + std::to_string(depth) + ", e.g. " +
                                pairs.front().first.to_string() + " = " + pairs.front().second.to_string());
        }
    } catch (const std::exception& e) {
        add(S::Warning, std::string("exact-overlap scan skipped: ") + e.what());
    }
    return out;
}

}  // namespace fractalab
