#include <cstdio>

#include "fractalab/errors.hpp"
#include "fractalab/runner.hpp"

namespace fractalab {

using nlohmann::json;

namespace {

class Params {
public:
    Params(std::string command, const json& in) : command_(std::move(command)), in_(in) {
        if (!in_.is_object()) throw InvalidArgumentError(command_ + ": parameters must be an object");
    }

    double number(const std::string& key, std::optional<double> fallback, double lo, double hi, bool open_lo = false) {
        double v;
        if (in_.contains(key)) {
            if (!in_[key].is_number()) bad(key, "must be a number");
            v = in_[key].get<double>();
        } else if (fallback) {
            v = *fallback;
        } else {
            bad(key, "is required");
        }
        if (!(open_lo ? v > lo : v >= lo) || !(v <= hi)) bad(key, "out of range");
        out_[key] = v;
        return v;
    }

    long integer(const std::string& key, std::optional<long> fallback, long lo, long hi) {
        long v;
        if (in_.contains(key)) {
            if (!in_[key].is_number_integer()) bad(key, "must be an integer");
            v = in_[key].get<long>();
        } else if (fallback) {
            v = *fallback;
        } else {
            bad(key, "is required");
        }
        if (v < lo || v > hi) bad(key, "out of range");
        out_[key] = v;
        return v;
    }

    void vector(const std::string& key, std::optional<std::vector<double>> fallback) {
        std::vector<double> v;
        if (in_.contains(key)) {
            const json& x = in_[key];
            if (x.is_number()) {
                v.push_back(x.get<double>());
            } else if (x.is_array()) {
                for (const auto& e : x) {
                    if (!e.is_number()) bad(key, "must hold numbers");
                    v.push_back(e.get<double>());
                }
            } else {
                bad(key, "must be a number or an array of numbers");
            }
            if (v.empty()) bad(key, "must not be empty");
        } else if (fallback) {
            v = *fallback;
        } else {
            return;
        }
        out_[key] = v;
    }

    void text(const std::string& key, bool required) {
        if (in_.contains(key)) {
            if (!in_[key].is_string()) bad(key, "must be a string");
            out_[key] = in_[key];
        } else if (required) {
            bad(key, "is required");
        }
    }

    void required_vector(const std::string& key) {
        if (!in_.contains(key)) bad(key, "is required");
        vector(key, std::nullopt);
    }

    json finish() {
        for (const auto& [key, value] : in_.items())
            if (!out_.contains(key)) bad(key, "is not a parameter of this command");
        return out_;
    }

    bool has(const std::string& key) const { return in_.contains(key); }

private:
    [[noreturn]] void bad(const std::string& key, const std::string& what) const {
        throw InvalidArgumentError(command_ + ": parameter '" + key + "' " + what);
    }

    std::string command_;
    const json& in_;
    json out_ = json::object();
};

constexpr double kInf = std::numeric_limits<double>::infinity();

void target_params(Params& p) {
    p.required_vector("x0");
    p.number("delta", std::nullopt, 0.0, 100.0);
    p.number("rmax", std::nullopt, 0.0, kInf, true);
    p.number("rmin", std::nullopt, 0.0, kInf, true);
    const double eps_min = p.number("eps_min", std::nullopt, 0.0, kInf, true);
    p.number("eps_max", eps_min * 256.0, eps_min, kInf);
    p.integer("steps_per_octave", 4, 1, 64);
}

}  // namespace

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> c{"dim", "pressure", "cutset", "awsc", "target", "baker", "content",
                                            "full-report", "validate"};
    return c;
}

json resolve_params(const std::string& command, const json& params) {
    Params p(command, params);
    if (command == "dim") {
        p.number("tol", 1e-10, 0.0, 0.1, true);
    } else if (command == "pressure") {
        p.number("s", std::nullopt, 0.0, 64.0);
        p.integer("kmax", 0, 0, 64);  // 0: min(12, deepest affordable)
    } else if (command == "cutset") {
        p.number("r", std::nullopt, 0.0, kInf, true);
    } else if (command == "awsc") {
        const long kmin = p.integer("kmin", 4, 1, 40);
        p.integer("kmax", std::max(12L, kmin), kmin, 40);
    } else if (command == "target") {
        target_params(p);
        p.integer("coverage_points", 100000, 0, 100000000);
        p.vector("weights", std::nullopt);
    } else if (command == "baker") {
        p.text("g", true);
        if (p.has("delta")) target_params(p);
    } else if (command == "content") {
        p.number("s", std::nullopt, 0.0, 3.0);
        p.number("eta", 0.0, 0.0, 0.2);
        p.number("grid", std::nullopt, 0.0, kInf, true);
        p.integer("samples", 100000, 1, 100000000);
        p.vector("region_center", std::nullopt);
        if (p.has("region_radius")) p.number("region_radius", std::nullopt, 0.0, kInf, true);
        p.vector("weights", std::nullopt);
    } else if (command == "full-report") {
        p.integer("kmax", 8, 2, 40);
        p.integer("awsc_kmax", 8, 1, 40);
        p.integer("gibbs_kmax", 3, 1, 10);
        p.vector("deltas", std::vector<double>{0.5, 1.0, 2.0, 4.0});
        p.integer("lyapunov_words", 2000, 2, 10000000);
    } else if (command == "validate") {
        if (p.has("kmax")) p.integer("kmax", std::nullopt, 1, 1000);
    } else {
        throw InvalidArgumentError("unknown command '" + command + "'");
    }
    return p.finish();
}

json config_to_json(const ExperimentConfig& config) {
    json j = json::object();
    j["command"] = config.command;
    j["ifs"] = config.ifs.generic_string();
    j["out_dir"] = config.out_dir.generic_string();
    j["format"] = config.format;
    j["seed"] = config.seed;
    j["params"] = resolve_params(config.command, config.params);
    return j;
}

ExperimentConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw InvalidArgumentError("config: expected an object");
    ExperimentConfig c;
    try {
        c.command = doc.at("command").get<std::string>();
        c.ifs = doc.at("ifs").get<std::string>();
        if (doc.contains("out_dir")) c.out_dir = doc["out_dir"].get<std::string>();
        if (doc.contains("format")) c.format = doc["format"].get<std::string>();
        c.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("params")) c.params = doc["params"];
    } catch (const json::exception& e) {
        throw InvalidArgumentError(std::string("config: ") + e.what());
    }
    if (c.format != "json" && c.format != "csv") throw InvalidArgumentError("config: format must be json or csv");
    return c;
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string config_hash(const ExperimentConfig& config) {
    return fnv1a_hex(config_to_json(config).dump());
}

}  // namespace fractalab
