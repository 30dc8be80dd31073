// scenario.hpp — configuration-driven runs: period trace, adiabatic report,
// identity audit and the Fig. 2 heat-versus-current reproduction.
//
// Config syntax: one "key = value" per line, '#' starts a comment, blank
// lines ignored, keys are unique. Lists are comma separated. Unknown keys and
// malformed values are errors. See README for the key table.

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "acflux/flux_engine.hpp"

namespace acflux {

enum class RunKind { trace, adiabatic, audit, fig2 };
enum class OutputFormat { csv, json };

struct ScenarioConfig {
    ModelParams model{};
    RunKind run = RunKind::fig2;
    int n_times = 256;
    EngineConfig engine{};
    std::string output_dir = ".";
    OutputFormat format = OutputFormat::csv;
    std::vector<double> fig2_amplitudes{10.0, 12.0};
    bool adiabatic_exact = true;  // fit the exact trace in the adiabatic run

    // Throws ConfigError on any invalid field.
    void validate() const;
};

RunKind parse_run_kind(const std::string& s);
OutputFormat parse_format(const std::string& s);
std::string to_string(RunKind k);

// Parses the flat key/value text; throws ConfigError with the line number.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

// Exit-code contract of the command-line runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RunOutput {
    int exit_code = kExitOk;
    std::map<std::string, std::string> files;  // file name -> contents
    std::string summary;                        // human-readable lines
};

// Computes everything in memory; nothing touches the disk.
RunOutput run_trace(const ScenarioConfig& cfg);
RunOutput run_adiabatic(const ScenarioConfig& cfg);
RunOutput run_audit(const ScenarioConfig& cfg);
RunOutput run_fig2(const ScenarioConfig& cfg);
RunOutput run_scenario(const ScenarioConfig& cfg);

// Writes all files of a run into cfg.output_dir (created if needed).
void write_outputs(const ScenarioConfig& cfg, const RunOutput& out);

// 17 significant digits, the CSV number format.
std::string format_number(double x);

} // namespace acflux
