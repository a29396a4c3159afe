#include <omp.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>

#include "fractalab/budget.hpp"
#include "fractalab/content.hpp"
#include "fractalab/cutset.hpp"
#include "fractalab/errors.hpp"
#include "fractalab/ifs_io.hpp"
#include "fractalab/runner.hpp"
#include "fractalab/targets.hpp"
#include "fractalab/text.hpp"
#include "fractalab/thermo.hpp"
#include "reports.hpp"

namespace fractalab {

using nlohmann::json;

namespace {

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Vec to_vec(const json& a) {
    Vec v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
    return v;
}

GSpec parse_gspec(const std::string& text) {
    if (text == "constant") return GSpec::constant();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string kind = text.substr(0, colon);
        double param = 0.0;
        try {
            std::size_t used = 0;
            param = std::stod(text.substr(colon + 1), &used);
            if (used != text.size() - colon - 1) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw InvalidArgumentError("g: cannot read the parameter in '" + text + "'");
        }
        if (kind == "power") return GSpec::power(param);
        if (kind == "exp") return GSpec::exponential(param);
    }
    throw InvalidArgumentError("g: expected constant, power:TAU or exp:A, got '" + text + "'");
}

struct Check {
    std::string name;
    bool passed;
};

class Session {
public:
    Session(const ExperimentConfig& config, json params, const IfsSystem& system)
        : config_(config), params_(std::move(params)), system_(system), budget_(default_word_budget()) {}

    void execute() {
        const std::string& c = config_.command;
        if (c == "dim") dim();
        else if (c == "pressure") pressure_cmd();
        else if (c == "cutset") cutset();
        else if (c == "awsc") awsc();
        else if (c == "target") target();
        else if (c == "baker") baker();
        else if (c == "content") content();
        else if (c == "full-report") full_report();
    }

    void write(const std::string& name, const std::string& text) {
        const auto path = config_.out_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path.string());
        out << text;
        reports_.push_back(path);
    }

    void write_report(const json& report, const std::string& csv) {
        if (config_.format == "csv") write(config_.command + ".csv", csv);
        else write(config_.command + ".json", report.dump(2) + "\n");
    }

    void consume(const std::string& op, std::uint64_t words) { budgets_.push_back({{"operation", op}, {"words", words}}); }
    void warn(const std::string& w) { warnings_.push_back(w); }
    void check(const std::string& name, bool ok) { checks_.push_back({name, ok}); }

    json checks_json() const {
        json a = json::array();
        for (const auto& c : checks_) a.push_back({{"name", c.name}, {"passed", c.passed}});
        return a;
    }
    bool all_checks_pass() const {
        for (const auto& c : checks_)
            if (!c.passed) return false;
        return true;
    }

    std::string summary;
    std::vector<std::filesystem::path> reports_;
    json budgets_ = json::array();
    std::vector<std::string> warnings_;
    bool inconclusive_ = false;
    std::uint64_t budget() const { return budget_; }

private:
    std::vector<double> weights_param() const {
        if (!params_.contains("weights")) return uniform_weights(system_.size());
        auto w = params_["weights"].get<std::vector<double>>();
        check_weights(w, system_.size());
        return w;
    }

    Vec point_param(const std::string& key) const {
        const Vec v = to_vec(params_[key]);
        if (v.size() != system_.dim())
            throw InvalidArgumentError(key + " must have " + std::to_string(system_.dim()) + " coordinates");
        return v;
    }

    void note_heuristics() {
        if (!system_.all_similarities())
            warn("pressure brackets use fitted quasi-additivity defects and are heuristic for non-similarity maps");
        if (system_.diameter_method() == DiameterMethod::Sampled) warn("attractor diameter is a sampled underestimate");
    }

    void dim() {
        note_heuristics();
        DimensionOptions opts;
        opts.word_budget = budget_;
        const DimensionResult r = conformality_dimension(system_, params_["tol"].get<double>(), opts);
        if (r.depth > 0) consume("conformality_dimension", word_count(system_.size(), r.depth));
        json rep = reports::to_json(r);
        rep["tol"] = params_["tol"];
        write_report(rep, "value,certified_lo,certified_hi,method\n" + format_number(r.value) + "," +
                              format_number(r.certified_lo) + "," + format_number(r.certified_hi) + "," + r.method + "\n");
        summary = format_number(r.value);
    }

    void pressure_cmd() {
        note_heuristics();
        int kmax = params_["kmax"].get<int>();
        if (kmax == 0) kmax = std::max(2, std::min(12, max_depth_within(system_.size(), budget_)));
        const PressureEstimate p = pressure(system_, params_["s"].get<double>(), kmax, PressureOptions{budget_, false});
        consume("pressure", p.method == "enumerated" ? word_count(system_.size(), kmax) : 0);
        write_report(reports::to_json(p), reports::pressure_csv(p));
        check("bracket_contains_value", p.lo <= p.value && p.value <= p.hi);
        summary = format_number(p.value);
    }

    void cutset() {
        const CutSet cs = cut_set(system_, params_["r"].get<double>(), budget_);
        consume("cut_set", cs.size());
        write_report(reports::to_json(cs), reports::cutset_csv(cs));
        check("prefix_free", is_prefix_free(cs.words));
        check("exhaustive", is_exhaustive(cs.words, system_.size()));
        summary = std::to_string(cs.size()) + " words, max length " + std::to_string(cs.max_length());
    }

    void awsc() {
        std::vector<AwscReport> levels;
        json rows = json::array();
        for (int k = params_["kmin"].get<int>(); k <= params_["kmax"].get<int>(); ++k) {
            levels.push_back(awsc_statistic(system_, k, CenterPlan::AnchorsAndMidpoints, budget_));
            consume("awsc_statistic", levels.back().cut_set_size);
            rows.push_back(reports::to_json(levels.back()));
            check("t_k_positive_k" + std::to_string(k), levels.back().t_k >= 1);
        }
        write_report({{"levels", rows}, {"radius_rule", "2^-k"}}, awsc_csv(levels));
        summary = awsc_csv(levels);
        if (!summary.empty() && summary.back() == '\n') summary.pop_back();
    }

    TargetExperiment run_target(const RadiusRule* rule) {
        const Vec x0 = point_param("x0");
        const auto r_ladder = cut_radius_ladder(system_, params_["rmax"].get<double>(), params_["rmin"].get<double>());
        const auto eps = dyadic_eps_ladder(params_["eps_max"].get<double>(), params_["eps_min"].get<double>(),
                                           params_["steps_per_octave"].get<int>());
        const double delta = params_["delta"].get<double>();
        TargetExperiment exp = rule ? target_balls(system_, x0, *rule, r_ladder, budget_)
                                    : target_balls(system_, x0, delta, r_ladder, budget_);
        exp.delta = delta;
        std::uint64_t balls = 0;
        for (const auto& g : exp.generations) balls += g.size();
        consume("target_balls", balls);
        exp.estimate = limsup_box_dimension(exp, system_, eps);
        exp.stabilization = stabilization_report(exp, system_, eps);
        return exp;
    }

    void target() {
        note_heuristics();
        TargetExperiment exp = run_target(nullptr);
        const double delta = exp.delta;
        json extra = json::object();
        if (delta > 0.0) {
            const SeriesBound sb = series_upper_bound(system_, delta, 1e-3, budget_);
            exp.series_bound = sb.value;
            extra["series"] = reports::to_json(sb);
        } else {
            exp.series_bound = system_.dim();
        }
        json rep = reports::to_json(exp);
        rep["series"] = extra.value("series", json(nullptr));
        const auto n_cov = params_["coverage_points"].get<std::size_t>();
        if (n_cov > 0) rep["coverage"] = coverage_check(exp, system_, weights_param(), n_cov, config_.seed);
        check("estimate_within_series_bound", exp.estimate.value <= exp.series_bound + 0.1);
        write_report(rep, reports::boxcount_csv(exp.estimate));
        summary = "dim_estimate " + format_number(exp.estimate.value) + " +/- " + format_number(exp.estimate.half_width) +
                  "\nseries_bound " + format_number(exp.series_bound);
    }

    void baker() {
        const GSpec g = parse_gspec(params_["g"].get<std::string>());
        warn("dim(mu) = dim(S) is assumed, not checked");
        if (!params_.contains("delta")) {
            const BakerConfig cfg = baker_sg(system_, g);
            write_report(reports::to_json(cfg), "s_g,converges_at_s_g,entropy_branch,equal_ratio_branch\n" +
                                                    format_number(cfg.s_g) + "," + (cfg.converges_at_s_g ? "1" : "0") + "," +
                                                    (cfg.entropy_branch ? "1" : "0") + "," + (cfg.equal_ratio_branch ? "1" : "0") + "\n");
            summary = "s_g " + format_number(cfg.s_g);
            return;
        }
        const Vec x0 = point_param("x0");
        const auto r_ladder = cut_radius_ladder(system_, params_["rmax"].get<double>(), params_["rmin"].get<double>());
        const auto eps = dyadic_eps_ladder(params_["eps_max"].get<double>(), params_["eps_min"].get<double>(),
                                           params_["steps_per_octave"].get<int>());
        const CompbakerResult res = compbaker_experiment(system_, x0, g, params_["delta"].get<double>(), r_ladder, eps, budget_);
        json rep = reports::to_json(res.config);
        rep["experiment"] = reports::to_json(res.experiment);
        rep["predicted"] = res.predicted;
        rep["estimate"] = res.experiment.estimate.value;
        check("estimate_within_prediction_plus_0.1", res.experiment.estimate.value <= res.predicted + 0.1);
        write_report(rep, reports::boxcount_csv(res.experiment.estimate));
        summary = "s_g " + format_number(res.config.s_g) + "\npredicted " + format_number(res.predicted) + "\ndim_estimate " +
                  format_number(res.experiment.estimate.value);
    }

    void content() {
        Region region;
        const BoundingBall& ab = system_.attractor_ball();
        region.center = params_.contains("region_center") ? point_param("region_center") : ab.center;
        region.radius = params_.contains("region_radius") ? params_["region_radius"].get<double>() : ab.radius * (1.0 + 1e-9);
        const EssentialContentEstimate e =
            essential_content_estimate(system_, weights_param(), region, params_["s"].get<double>(), params_["eta"].get<double>(),
                                       params_["grid"].get<double>(), params_["samples"].get<std::size_t>(), config_.seed);
        check("essential_not_above_plain", e.value <= e.plain_value + 1e-12);
        check("retained_mass", e.retained_mass >= 1.0 - e.eta - 1e-12);
        write_report(reports::to_json(e), reports::content_csv(e));
        summary = format_number(e.value);
    }

    // Runs one section; inconclusive or over-budget sections become warnings.
    void section(json& rep, const std::string& name, const std::function<json()>& body) {
        try {
            rep[name] = body();
        } catch (const InconclusiveError& e) {
            inconclusive_ = true;
            warn(name + ": " + e.what());
            rep[name] = {{"inconclusive", e.what()}, {"ladder", e.ladder()}};
        } catch (const ResourceError& e) {
            warn(name + ": " + e.what());
            rep[name] = {{"budget_exceeded", e.what()}, {"depth_reached", e.depth_reached()}, {"partial", e.partial_ladder()}};
        }
    }

    void full_report() {
        note_heuristics();
        json rep = json::object();
        rep["system"] = {{"maps", system_.size()},
                         {"dim", system_.dim()},
                         {"all_similarities", system_.all_similarities()},
                         {"attractor_diameter", system_.attractor_diameter()},
                         {"diameter_method", to_string(system_.diameter_method())}};
        const int kmax = std::min(params_["kmax"].get<int>(), std::max(2, max_depth_within(system_.size(), budget_)));
        double dim_value = -1.0;
        section(rep, "dimension", [&] {
            DimensionOptions o;
            o.word_budget = budget_;
            const DimensionResult r = conformality_dimension(system_, 1e-10, o);
            dim_value = r.value;
            return reports::to_json(r);
        });
        section(rep, "pressure", [&] {
            json a = json::array();
            std::vector<double> grid{0.0, 0.3, 1.0};
            if (dim_value >= 0.0) grid.push_back(dim_value);
            for (double s : grid) {
                const PressureEstimate p = pressure(system_, s, kmax, PressureOptions{budget_, false});
                check("pressure_bracket_s" + format_number(s), p.lo <= p.value && p.value <= p.hi);
                a.push_back(reports::to_json(p));
            }
            return a;
        });
        if (dim_value >= 0.0) {
            section(rep, "gibbs", [&] {
                json a = json::array();
                const int kg = std::min(params_["gibbs_kmax"].get<int>(), std::max(1, max_depth_within(system_.size(), 1u << 14) / 2));
                for (int k = 1; k <= kg; ++k) {
                    const GibbsConsistency g = gibbs_consistency(system_, dim_value, k, budget_);
                    check("gibbs_within_bracket_k" + std::to_string(k), g.within());
                    a.push_back(reports::to_json(g));
                }
                return a;
            });
            section(rep, "ergodic", [&] {
                const int kb = std::max(1, std::min(6, max_depth_within(system_.size(), 1u << 14)));
                const ErgodicStats block = block_ergodic_stats(system_, gibbs_weights(system_, dim_value, kb, budget_));
                const ErgodicStats uni = lyapunov_exponent(system_, uniform_weights(system_.size()),
                                                           params_["lyapunov_words"].get<std::size_t>(), 32, config_.seed);
                json out = {{"gibbs_block", reports::to_json(block)}, {"gibbs_block_k", kb}, {"uniform", reports::to_json(uni)}};
                if (!system_.all_similarities())
                    out["weak_conformality_defect_k8"] = weak_conformality_diagnostic(system_, 8, 200, config_.seed);
                return out;
            });
            section(rep, "series", [&] {
                json a = json::array();
                for (double d : params_["deltas"].get<std::vector<double>>()) {
                    if (!(d > 0.0)) throw InvalidArgumentError("deltas must be positive");
                    const SeriesBound sb = series_upper_bound(system_, d, 1e-3, budget_);
                    check("series_times_delta_delta" + format_number(d), std::abs(sb.value * d - sb.dim) <= 1e-8);
                    a.push_back(reports::to_json(sb));
                }
                return a;
            });
        }
        section(rep, "awsc", [&] {
            json a = json::array();
            for (int k = 1; k <= params_["awsc_kmax"].get<int>(); ++k) {
                if (std::ldexp(1.0, -k) >= system_.attractor_diameter()) continue;
                a.push_back(reports::to_json(awsc_statistic(system_, k, CenterPlan::AnchorsAndMidpoints, budget_)));
            }
            return a;
        });
        section(rep, "exact_overlaps", [&] {
            const int depth = std::max(1, std::min(4, max_depth_within(system_.size(), 1u << 12)));
            json pairs = json::array();
            for (const auto& [a, b] : exact_overlap_scan(system_, depth, budget_)) pairs.push_back({a.to_string(), b.to_string()});
            return json{{"depth", depth}, {"pairs", pairs}};
        });
        if (system_.all_similarities()) {
            section(rep, "baker", [&] { return reports::to_json(baker_sg(system_, GSpec::constant())); });
        }
        rep["checks"] = checks_json();
        write("full-report.json", rep.dump(2) + "\n");
        summary = dim_value >= 0.0 ? "dim " + format_number(dim_value) : "dim inconclusive";
    }

    const ExperimentConfig& config_;
    json params_;
    const IfsSystem& system_;
    std::uint64_t budget_;
    std::vector<Check> checks_;
};

}  // namespace

RunResult run(const ExperimentConfig& config) {
    RunResult res;
    json manifest = {{"tool", "fractalab"}, {"version", FRACTALAB_VERSION}, {"started", utc_now()}};
    std::vector<std::string> warnings;
    json budgets = json::array();

    if (config.threads > 0) omp_set_num_threads(config.threads);
    try {
        std::filesystem::create_directories(config.out_dir);
        const json canonical = config_to_json(config);
        manifest["config"] = canonical;
        manifest["config_hash"] = fnv1a_hex(canonical.dump());
        manifest["word_budget"] = default_word_budget();

        if (config.command == "validate") {
            const auto diags = validate(config);
            json list = json::array();
            std::string text;
            bool errors = false;
            for (const auto& d : diags) {
                list.push_back({{"severity", to_string(d.severity)}, {"message", d.message}});
                text += to_string(d.severity) + ": " + d.message + "\n";
                errors = errors || d.severity == Diagnostic::Severity::Error;
            }
            const auto path = config.out_dir / "validate.json";
            std::ofstream(path, std::ios::binary) << json{{"diagnostics", list}}.dump(2) << "\n";
            res.reports.push_back(path);
            res.summary = text.empty() ? "no diagnostics" : text.substr(0, text.size() - 1);
            res.exit_code = errors ? 1 : 0;
        } else {
            const IfsSystem system = load_ifs(config.ifs);
            manifest["ifs_hash"] = fnv1a_hex(ifs_to_json(system).dump());
            Session session(config, canonical["params"], system);
            try {
                session.execute();
            } catch (const ResourceError& e) {
                json partial = {{"error", e.what()}, {"depth_reached", e.depth_reached()}, {"partial_ladder", e.partial_ladder()}};
                session.write(config.command + ".partial.json", partial.dump(2) + "\n");
                session.warn(std::string("budget exceeded: ") + e.what());
                session.summary = std::string("error: ") + e.what();
                res.exit_code = 1;
            }
            res.summary = session.summary;
            res.reports = session.reports_;
            warnings = session.warnings_;
            budgets = session.budgets_;
            if (res.exit_code == 0) {
                if (!session.all_checks_pass()) res.exit_code = 1;
                else if (session.inconclusive_) res.exit_code = 2;
            }
            manifest["checks"] = session.checks_json();
        }
    } catch (const InconclusiveError& e) {
        warnings.push_back(std::string("inconclusive: ") + e.what());
        res.summary = std::string("inconclusive: ") + e.what();
        res.exit_code = 2;
    } catch (const std::exception& e) {
        warnings.push_back(std::string("error: ") + e.what());
        res.summary = std::string("error: ") + e.what();
        res.exit_code = 1;
    }

    json files = json::array();
    for (const auto& p : res.reports) files.push_back(p.filename().generic_string());
    manifest["reports"] = files;
    manifest["budgets"] = budgets;
    manifest["warnings"] = warnings;
    manifest["exit_code"] = res.exit_code;
    manifest["finished"] = utc_now();
    res.manifest = manifest;
    try {
        std::ofstream(config.out_dir / "manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
    } catch (...) {
    }
    return res;
}

}  // namespace fractalab
