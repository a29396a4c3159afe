// Acceptance checks: prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <omp.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fractalab/content.hpp"
#include "fractalab/cutset.hpp"
#include "fractalab/ifs_io.hpp"
#include "fractalab/runner.hpp"
#include "fractalab/targets.hpp"
#include "fractalab/thermo.hpp"

using namespace fractalab;
namespace fs = std::filesystem;

namespace {

const fs::path kGallery = FRACTALAB_GALLERY_DIR;
const double kCantorDim = std::log(2.0) / std::log(3.0);

IfsSystem gallery(const std::string& name) { return load_ifs(kGallery / (name + ".json")); }

Vec point(double x) {
    Vec v(1);
    v[0] = x;
    return v;
}

// Collects failure notes for one criterion.
struct Log {
    std::vector<std::string> failures;
    std::string detail;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

int failed = 0;

void criterion(const std::string& name, double limit_seconds, const std::function<void(Log&)>& body) {
    Log log;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(log);
    } catch (const std::exception& e) {
        log.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0.0 && secs > limit_seconds)
        log.failures.push_back("took " + num(secs) + " s, limit " + num(limit_seconds) + " s");
    const bool ok = log.failures.empty();
    if (!ok) ++failed;
    std::printf("%s  %-28s %8.2f s  %s\n", ok ? "PASS" : "FAIL", name.c_str(), secs, log.detail.c_str());
    for (const auto& f : log.failures) std::printf("      - %s\n", f.c_str());
    std::fflush(stdout);
}

// ---------------------------------------------------------------------------

void similarity_dimension(Log& log) {
    const std::vector<std::pair<std::string, double>> cases{
        {"cantor", kCantorDim}, {"twin", 1.0}, {"half_quarter_quarter", 1.0}};
    for (const auto& [name, expected] : cases) {
        const auto t0 = std::chrono::steady_clock::now();
        const double got = conformality_dimension(gallery(name), 1e-10).value;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        log.expect(std::abs(got - expected) <= 1e-10, name + ": " + num(got) + " vs " + num(expected));
        log.expect(secs < 1.0, name + ": " + num(secs) + " s");
        log.detail += name + "=" + num(got) + " ";
    }
}

void pressure_consistency(Log& log) {
    double worst = 0.0;
    for (const char* name : {"cantor", "twin", "half_quarter_quarter", "sierpinski", "overlap_triple"}) {
        const IfsSystem sys = gallery(name);
        const double dim = conformality_dimension(sys, 1e-10).value;
        const auto ratios = sys.ratios();
        for (double s : {0.0, 0.3, dim, 1.0}) {
            const int k = 8;
            const auto enumerated = pressure(sys, s, k, PressureOptions{default_word_budget(), true});
            double sum = 0.0;
            for (double c : ratios) sum += std::pow(c, s);
            const double closed = std::log(sum) + s * std::log(sys.attractor_diameter()) / k;
            const double err = std::abs(enumerated.gk.back() / k - closed);
            worst = std::max(worst, err);
            log.expect(err <= 1e-9, std::string(name) + " s=" + num(s) + ": error " + num(err));
        }
        const double p0 = pressure(sys, 0.0, 8).value;
        log.expect(p0 == std::log(static_cast<double>(sys.size())), std::string(name) + ": P(0) = " + num(p0));
    }
    log.detail = "max |g_8/8 - closed form| = " + num(worst);
}

void cut_set_antichains(Log& log) {
    const std::vector<IfsSystem> systems{gallery("cantor"), gallery("twin"), gallery("half_quarter_quarter"),
                                         gallery("overlap_triple"), gallery("sierpinski"), gallery("conformal_rotations")};
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    std::size_t words = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const IfsSystem& sys = systems[static_cast<std::size_t>(rng() % systems.size())];
        const double r = sys.attractor_diameter() * std::pow(10.0, -0.2 - 3.3 * u(rng));
        const CutSet cs = cut_set(sys, r);
        words += cs.size();
        std::vector<double> p(static_cast<std::size_t>(sys.size()));
        for (double& x : p) x = 0.05 + u(rng);
        const double total = std::accumulate(p.begin(), p.end(), 0.0);
        for (double& x : p) x /= total;
        const double mass = product_mass(cs.words, p);
        worst = std::max(worst, std::abs(mass - 1.0));
        log.expect(is_prefix_free(cs.words), "trial " + std::to_string(trial) + ": not prefix-free");
        log.expect(is_exhaustive(cs.words, sys.size()), "trial " + std::to_string(trial) + ": not exhaustive");
        log.expect(std::abs(mass - 1.0) <= 1e-12, "trial " + std::to_string(trial) + ": mass " + num(mass));
    }
    log.detail = std::to_string(words) + " words, max |mass - 1| = " + num(worst);
}

TargetExperiment cantor_target(const IfsSystem& c, double delta) {
    const auto r = cut_radius_ladder(c, 1.0 / 3, 1e-6);
    const auto eps = dyadic_eps_ladder(std::ldexp(1.0, -6), std::ldexp(1.0, -14));
    TargetExperiment e = target_balls(c, point(0.0), delta, r);
    e.estimate = limsup_box_dimension(e, c, eps);
    e.stabilization = stabilization_report(e, c, eps);
    return e;
}

void shrinking_targets(Log& log) {
    const IfsSystem c = gallery("cantor");
    const double dim = conformality_dimension(c, 1e-12).value;
    for (double delta : {0.5, 1.0, 2.0, 4.0}) {
        const SeriesBound sb = series_upper_bound(c, delta);
        log.expect(std::abs(sb.value * delta - dim) <= 1e-8, "series bound at delta " + num(delta) + ": " + num(sb.value));
    }
    const std::vector<std::pair<double, double>> cases{{1.0, 0.05}, {2.0, 0.08}};
    for (const auto& [delta, tol] : cases) {
        const TargetExperiment e = cantor_target(c, delta);
        const double expected = kCantorDim / delta;
        log.expect(std::abs(e.estimate.value - expected) <= tol,
                   "delta " + num(delta) + ": estimate " + num(e.estimate.value) + " vs " + num(expected));
        log.expect(e.stabilization.size() == 3, "delta " + num(delta) + ": stabilization incomplete");
        std::string stab;
        for (const auto& s : e.stabilization) {
            log.expect(std::abs(s.value - expected) <= tol,
                       "delta " + num(delta) + " offset " + std::to_string(s.offset) + ": " + num(s.value));
            stab += (stab.empty() ? "" : "/") + num(std::round(s.value * 1e4) / 1e4);
        }
        log.detail += "delta=" + num(delta) + ": " + num(std::round(e.estimate.value * 1e4) / 1e4) + " [" + stab + "] ";
    }
}

void trichotomy(Log& log) {
    const IfsSystem c = gallery("cantor");
    {
        const auto r = cut_radius_ladder(c, 1.0 / 3, 1e-6);
        const TargetExperiment e = target_balls(c, point(0.0), 0.9, r);
        const double f = coverage_check(e, c, uniform_weights(2), 100000, 1).back();
        log.expect(f >= 0.999, "delta 0.9: coverage " + num(f));
        log.detail += "delta=0.9 x0=0: " + num(f) + "  ";
    }
    {
        const auto r = cut_radius_ladder(c, 1.0 / 3, std::pow(3.0, -20) * 1.0000001);
        const TargetExperiment e = target_balls(c, point(2.0), 1.5, r);
        const double f = coverage_check(e, c, uniform_weights(2), 100000, 1).back();
        log.expect(f <= 1e-3, "x0 = 2: coverage " + num(f));
        log.detail += "delta=1.5 x0=2: " + num(f);
    }
}

void baker_complement(Log& log) {
    const IfsSystem t = gallery("twin");
    const GSpec g = GSpec::exponential(0.25);
    const BakerConfig cfg = baker_sg(t, g);
    const double expected = std::log(2.0) / (0.25 + std::log(2.0));
    log.expect(std::abs(cfg.s_g - expected) <= 1e-9, "s_g " + num(cfg.s_g) + " vs " + num(expected));
    log.detail = "s_g=" + num(cfg.s_g);
    const auto r = cut_radius_ladder(t, 0.5, std::ldexp(1.0, -16));
    const auto eps = dyadic_eps_ladder(std::ldexp(1.0, -5), std::ldexp(1.0, -12));
    for (double delta : {1.0, 2.0}) {
        const CompbakerResult res = compbaker_experiment(t, point(0.0), g, delta, r, eps);
        const double want = delta <= 1.0 ? 1.0 : 1.0 / delta;
        log.expect(std::abs(res.predicted - want) <= 1e-12, "prediction " + num(res.predicted));
        log.expect(std::abs(res.experiment.estimate.value - res.predicted) <= 0.08,
                   "delta " + num(delta) + ": estimate " + num(res.experiment.estimate.value));
        log.detail += " delta=" + num(delta) + ": " + num(std::round(res.experiment.estimate.value * 1e4) / 1e4);
    }
}

void content_calculus(Log& log) {
    const std::vector<IfsSystem> systems{gallery("cantor"), gallery("twin"), gallery("half_quarter_quarter"),
                                         gallery("overlap_triple")};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<CoverCase> cases;
    for (int i = 0; i < 100; ++i) {
        const IfsSystem& sys = systems[static_cast<std::size_t>(i) % systems.size()];
        const BoundingBall& ab = sys.attractor_ball();
        const Region region{ab.center, ab.radius * (1 + 1e-9)};
        const double s = 1.2 * u(rng), eta = 0.2 * u(rng), grid = std::pow(2.0, -4.0 - 6.0 * u(rng));
        const auto e = essential_content_estimate(sys, uniform_weights(sys.size()), region, s, eta, grid, 10000,
                                                  static_cast<std::uint64_t>(i) + 1);
        CoverCase c;
        for (const auto& b : e.content.cover) c.diameters.push_back(b.side);
        c.set_diameter = e.content.set_diameter;
        c.s = s;
        c.value = e.value;
        c.plain_value = e.plain_value;
        cases.push_back(std::move(c));
    }
    std::vector<double> s_grid;
    for (int j = 0; j < 20; ++j) s_grid.push_back(0.075 * j);
    const std::vector<double> deltas{1.0, 1.25, 1.5, 2.0, 3.0, 4.0};
    const CalculusReport rep = content_calculus_check(cases, s_grid, deltas);
    for (const auto& f : rep.failures) log.expect(false, f);

    const IfsSystem c = gallery("cantor");
    const Region unit{point(0.5), 0.5 + 1e-9};
    std::size_t pairs = 0;
    for (double s : {0.1, 0.4, 0.6309, 0.8, 1.0}) {
        for (double eta : {0.0, 0.02, 0.1, 0.2}) {
            const auto e = essential_content_estimate(c, uniform_weights(2), unit, s, eta, std::pow(3.0, -7), 50000, 3);
            ++pairs;
            log.expect(e.value <= e.plain_value, "essential above plain at s " + num(s) + ", eta " + num(eta));
        }
    }
    std::vector<double> decay;
    for (int j : {6, 8, 10}) decay.push_back(essential_content_estimate(c, uniform_weights(2), unit, 0.9, 0.05, std::pow(3.0, -j), 200000, 4).value);
    log.expect(decay[0] > decay[1] && decay[1] > decay[2], "no decay above the dimension: " + num(decay[0]) + ", " +
                                                                num(decay[1]) + ", " + num(decay[2]));
    log.detail = std::to_string(rep.checks) + " cover checks, " + std::to_string(pairs) + " (s, eta) pairs, decay " +
                 num(decay[0]) + " > " + num(decay[1]) + " > " + num(decay[2]);
}

void awsc_trend(Log& log) {
    const IfsSystem c = gallery("cantor");
    double prev = 1e300;
    std::string ts;
    for (int k = 4; k <= 12; ++k) {
        const AwscReport r = awsc_statistic(c, k);
        const double rate = std::log(static_cast<double>(r.t_k)) / k;
        log.expect(r.t_k <= 3, "t_" + std::to_string(k) + " = " + std::to_string(r.t_k));
        log.expect(rate < prev, "log(t_k)/k not decreasing at k = " + std::to_string(k));
        prev = rate;
        ts += std::to_string(r.t_k);
    }
    log.detail = "t_4..t_12 = " + ts;
}

void gibbs_consistency_check(Log& log) {
    std::size_t n = 0;
    for (const char* name : {"cantor", "twin", "half_quarter_quarter", "overlap_triple", "sierpinski", "conformal_rotations"}) {
        const IfsSystem sys = gallery(name);
        const double dim = conformality_dimension(sys, 1e-10).value;
        for (int k = 1; k <= 5; ++k) {
            const GibbsConsistency g = gibbs_consistency(sys, dim, k);
            ++n;
            log.expect(g.within(), std::string(name) + " k=" + std::to_string(k) + ": [" + num(g.log_ratio_min) + ", " +
                                       num(g.log_ratio_max) + "] outside [" + num(g.bracket_lo) + ", " + num(g.bracket_hi) + "]");
        }
    }
    log.detail = std::to_string(n) + " (system, k) pairs";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void determinism(Log& log) {
    const fs::path root = fs::temp_directory_path() / ("fractalab_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    const int many = std::max(2, omp_get_num_procs());
    const std::vector<std::pair<std::string, int>> runs{{"a", many}, {"b", many}, {"c", 1}};
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(kGallery)) {
        if (entry.path().extension() != ".json") continue;
        std::vector<std::vector<fs::path>> reports;
        for (const auto& [tag, threads] : runs) {
            ExperimentConfig cfg;
            cfg.command = "full-report";
            cfg.ifs = entry.path();
            cfg.out_dir = root / tag / entry.path().stem();
            cfg.threads = threads;
            const RunResult r = run(cfg);
            log.expect(r.exit_code == 0, entry.path().filename().string() + ": exit " + std::to_string(r.exit_code));
            reports.push_back(r.reports);
        }
        for (std::size_t i = 1; i < reports.size(); ++i) {
            log.expect(reports[i].size() == reports[0].size(), "report lists differ");
            for (std::size_t j = 0; j < std::min(reports[i].size(), reports[0].size()); ++j) {
                ++compared;
                log.expect(slurp(reports[i][j]) == slurp(reports[0][j]),
                           reports[i][j].string() + " differs from " + reports[0][j].string());
            }
        }
    }
    fs::remove_all(root);
    log.detail = std::to_string(compared) + " report pairs compared (threads " + std::to_string(many) + ", " +
                 std::to_string(many) + ", 1)";
}

}  // namespace

int main() {
    criterion("similarity-dimension", 3.0, similarity_dimension);
    criterion("pressure-consistency", 5.0, pressure_consistency);
    criterion("cut-set-antichains", 0.0, cut_set_antichains);
    criterion("shrinking-target-law", 60.0, shrinking_targets);
    criterion("trichotomy-endpoints", 30.0, trichotomy);
    criterion("baker-complement", 90.0, baker_complement);
    criterion("content-calculus", 30.0, content_calculus);
    criterion("awsc-trend", 20.0, awsc_trend);
    criterion("gibbs-consistency", 10.0, gibbs_consistency_check);
    criterion("determinism", 0.0, determinism);
    std::printf("%d of 10 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
