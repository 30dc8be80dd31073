// acflux — scenario runner.
//
//   acflux <trace|adiabatic|audit|fig2> [--config FILE] [--out DIR]
//          [--threads N] [--format csv|json]
//
// Exit status: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "acflux/errors.hpp"
#include "acflux/scenario.hpp"

namespace {

int fail(int code, const std::string& what) {
    std::fprintf(stderr, "acflux: %s\n", what.c_str());
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven resonant level: time-resolved charge, energy and heat fluxes"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    int threads = 0;
    std::string format;
    app.add_option("--config", config_path, "Key/value scenario file (defaults reproduce Fig. 2)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
    app.add_option("--threads", threads, "Worker threads (overrides engine.threads)")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Output format (overrides output.format)")
        ->check(CLI::IsMember({"csv", "json"}));
    for (const char* name : {"trace", "adiabatic", "audit", "fig2"}) app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : acflux::kExitConfig;
    }

    acflux::ScenarioConfig cfg;
    try {
        if (!config_path.empty()) cfg = acflux::load_config(config_path);
        cfg.run = acflux::parse_run_kind(app.get_subcommands().front()->get_name());
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (threads > 0) cfg.engine.threads = threads;
        if (!format.empty()) cfg.format = acflux::parse_format(format);
        cfg.validate();
    } catch (const acflux::Error& e) {
        return fail(acflux::kExitConfig, e.what());
    }

    acflux::RunOutput out;
    try {
        out = acflux::run_scenario(cfg);
    } catch (const acflux::ConfigError& e) {
        return fail(acflux::kExitConfig, e.what());
    } catch (const acflux::InvalidParams& e) {
        return fail(acflux::kExitConfig, e.what());
    } catch (const acflux::Error& e) {
        return fail(acflux::kExitNumerical, e.what());
    } catch (const std::exception& e) {
        return fail(acflux::kExitNumerical, e.what());
    }

    try {
        acflux::write_outputs(cfg, out);
    } catch (const acflux::Error& e) {
        return fail(acflux::kExitConfig, e.what());
    }
    std::fputs(out.summary.c_str(), stdout);
    return out.exit_code;
}
