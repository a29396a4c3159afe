#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

namespace fractalab {

inline constexpr std::uint64_t kDefaultSeed = 1;

/// One CLI invocation. `params` holds the command-specific values; missing
/// optional values are filled in by resolve_params().
struct ExperimentConfig {
    std::string command;
    std::filesystem::path ifs;
    std::filesystem::path out_dir = ".";
    std::string format = "json";  ///< "json" or "csv"
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;  ///< 0 keeps the OpenMP default
    nlohmann::json params = nlohmann::json::object();
};

const std::vector<std::string>& known_commands();

/// Canonical form: sorted keys, defaults resolved. Threads are excluded
/// since they never change results.
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& doc);

/// FNV-1a (64 bit) of the canonical JSON text, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);
std::string config_hash(const ExperimentConfig& config);

/// Fills defaults and range-checks the command parameters. Throws
/// InvalidArgumentError naming the offending parameter.
nlohmann::json resolve_params(const std::string& command, const nlohmann::json& params);

struct RunResult {
    int exit_code = 0;  ///< 0 pass, 1 error or failed check, 2 inconclusive
    std::string summary;  ///< what the CLI prints
    nlohmann::json manifest;
    std::vector<std::filesystem::path> reports;
};

/// Executes the command, writing reports and manifest.json into out_dir.
/// Errors are caught and reflected in the exit code and the manifest.
RunResult run(const ExperimentConfig& config);

struct Diagnostic {
    enum class Severity { Error, Warning, Note };
    Severity severity = Severity::Note;
    std::string message;
};

std::string to_string(Diagnostic::Severity s);

/// Schema and contraction checks, budget projections for the requested
/// depth, ratio-condition flags and an exact-overlap summary. Never throws.
std::vector<Diagnostic> validate(const ExperimentConfig& config);

}  // namespace fractalab
