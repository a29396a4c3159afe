#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "fractalab/runner.hpp"

namespace {

using nlohmann::json;

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw CLI::ValidationError("expected comma-separated numbers: " + text);
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("empty list");
    return out;
}

struct Command {
    CLI::App* app = nullptr;
    fractalab::ExperimentConfig config;
    std::map<std::string, double> numbers;
    std::map<std::string, long> integers;
    std::map<std::string, std::string> lists;
    std::map<std::string, std::string> texts;

    void number(const std::string& flag, const std::string& key, const std::string& help, bool required = false) {
        auto* o = app->add_option(flag, numbers[key], help);
        if (required) o->required();
        seen.emplace_back(o, key);
    }
    void integer(const std::string& flag, const std::string& key, const std::string& help) {
        seen.emplace_back(app->add_option(flag, integers[key], help), key);
    }
    void list(const std::string& flag, const std::string& key, const std::string& help, bool required = false) {
        auto* o = app->add_option(flag, lists[key], help);
        if (required) o->required();
        seen.emplace_back(o, key);
    }
    void text(const std::string& flag, const std::string& key, const std::string& help, bool required = false) {
        auto* o = app->add_option(flag, texts[key], help);
        if (required) o->required();
        seen.emplace_back(o, key);
    }

    json params() const {
        json p = json::object();
        for (const auto& [opt, key] : seen) {
            if (opt->count() == 0) continue;
            if (numbers.count(key)) p[key] = numbers.at(key);
            else if (integers.count(key)) p[key] = integers.at(key);
            else if (lists.count(key)) p[key] = parse_list(lists.at(key));
            else p[key] = texts.at(key);
        }
        return p;
    }

    std::vector<std::pair<CLI::Option*, std::string>> seen;
};

void target_flags(Command& c, bool required) {
    c.list("--x0", "x0", "target base point, comma-separated", required);
    c.number("--delta", "delta", "shrinking exponent", required);
    c.number("--rmax", "rmax", "coarsest cut radius", required);
    c.number("--rmin", "rmin", "finest cut radius", required);
    c.number("--eps-min", "eps_min", "finest box size", required);
    c.number("--eps-max", "eps_max", "coarsest box size (default 256 eps-min)");
    c.integer("--steps-per-octave", "steps_per_octave", "box sizes per halving (default 4)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractalab: dimension theory experiments for iterated function systems"};
    app.require_subcommand(1);

    std::map<std::string, Command> commands;
    auto add = [&](const std::string& name, const std::string& help) -> Command& {
        Command& c = commands[name];
        c.config.command = name;
        c.app = app.add_subcommand(name, help);
        c.app->add_option("--ifs", c.config.ifs, "IFS definition (JSON)")->required()->check(CLI::ExistingFile);
        c.app->add_option("--out", c.config.out_dir, "output directory (default .)");
        c.app->add_option("--format", c.config.format, "report format")->check(CLI::IsMember({"json", "csv"}));
        c.app->add_option("--seed", c.config.seed, "random seed (default 1)");
        c.app->add_option("--threads", c.config.threads, "OpenMP threads (default: runtime choice)");
        return c;
    };

    add("dim", "conformality (similarity) dimension").number("--tol", "tol", "bisection tolerance (default 1e-10)");
    {
        Command& c = add("pressure", "pressure P(s) with its bracket");
        c.number("--s", "s", "exponent", true);
        c.integer("--kmax", "kmax", "enumeration depth (default min(12, budget))");
    }
    add("cutset", "diameter cut-set at radius r").number("--r", "r", "threshold radius", true);
    {
        Command& c = add("awsc", "overlap statistic t_k per level");
        c.integer("--kmin", "kmin", "first level (default 4)");
        c.integer("--kmax", "kmax", "last level (default 12)");
    }
    {
        Command& c = add("target", "shrinking-target box dimension experiment");
        target_flags(c, true);
        c.integer("--coverage-points", "coverage_points", "sample size for coverage fractions, 0 to skip");
        c.list("--weights", "weights", "sampling weights, comma-separated (default uniform)");
    }
    {
        Command& c = add("baker", "critical exponent s_g and the Baker-type experiment");
        c.text("--g", "g", "constant | power:TAU | exp:A", true);
        target_flags(c, false);
    }
    {
        Command& c = add("content", "Hausdorff and essential content estimates");
        c.number("--s", "s", "exponent", true);
        c.number("--eta", "eta", "discarded mass budget (default 0)");
        c.number("--grid", "grid", "grid cell side", true);
        c.integer("--samples", "samples", "chaos-game sample size (default 1e5)");
        c.list("--region-center", "region_center", "region ball center (default: attractor ball)");
        c.number("--region-radius", "region_radius", "region ball radius");
        c.list("--weights", "weights", "sampling weights, comma-separated (default uniform)");
    }
    {
        Command& c = add("full-report", "every analysis with default settings");
        c.integer("--kmax", "kmax", "pressure depth (default 8)");
        c.integer("--awsc-kmax", "awsc_kmax", "last AWSC level (default 8)");
        c.integer("--gibbs-kmax", "gibbs_kmax", "last Gibbs level (default 3)");
        c.list("--deltas", "deltas", "series-bound exponents (default 0.5,1,2,4)");
        c.integer("--lyapunov-words", "lyapunov_words", "Monte Carlo words (default 2000)");
    }
    add("validate", "check an IFS file and a planned depth").integer("--kmax", "kmax", "planned enumeration depth");

    CLI11_PARSE(app, argc, argv);

    for (auto& [name, c] : commands) {
        if (!c.app->parsed()) continue;
        try {
            c.config.params = c.params();
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        const fractalab::RunResult r = fractalab::run(c.config);
        (r.exit_code == 0 ? std::cout : std::cerr) << r.summary << "\n";
        return r.exit_code;
    }
    return 1;
}
