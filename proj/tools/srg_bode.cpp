#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "srgbode/commands.hpp"
#include "srgbode/config.hpp"
#include "srgbode/version.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    bool out_set = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "path to the run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "output directory (overrides out.dir)")
        ->each([&opts](const std::string&) { opts.out_set = true; });
    cmd->add_option("--seed", opts.seed, "random seed (overrides seed)")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
}

srgbode::RunConfig load(const CommonOptions& opts) {
    srgbode::RunConfig rc = srgbode::load_config(opts.config_path);
    if (opts.out_set) rc.out_dir = opts.out_dir;
    if (opts.seed_set) rc.seed = opts.seed;
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"srg-bode: certified gain and amplitude surfaces for Lur'e feedback loops"};
    app.set_version_flag("--version", srgbode::kVersion);
    app.require_subcommand(1);

    CommonOptions surface_opts, analyze_opts, validate_opts, lti_opts;

    CLI::App* surface = app.add_subcommand("surface", "compute the full (omega, U) surface");
    add_common(surface, surface_opts);

    CLI::App* analyze = app.add_subcommand("analyze", "probe a single (omega, U) point");
    add_common(analyze, analyze_opts);
    double omega = 0.0, U = 0.0;
    bool u_inf = false;
    analyze->add_option("--omega", omega, "excitation frequency [rad/s]")->required();
    CLI::Option* u_opt = analyze->add_option("--U", U, "harmonic energy bound");
    analyze->add_flag("--u-inf", u_inf, "use the U -> infinity asymptote")->excludes(u_opt);

    CLI::App* validate = app.add_subcommand("validate", "simulate random inputs against bounds");
    add_common(validate, validate_opts);
    int points = -1, inputs = -1;
    validate->add_option("--points", points, "number of surface points to sample");
    validate->add_option("--inputs-per-point", inputs, "random inputs per sampled point");

    CLI::App* lti = app.add_subcommand("lti-reference", "linearized closed-loop magnitude CSV");
    add_common(lti, lti_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : srgbode::cli::kExitUsage;
    }

    try {
        if (surface->parsed()) return srgbode::cli::run_surface(load(surface_opts), std::cout, std::cerr);
        if (analyze->parsed()) {
            if (!u_inf && u_opt->count() == 0)
                throw srgbode::ConfigError("analyze: pass --U or --u-inf");
            return srgbode::cli::run_analyze(load(analyze_opts), omega, U, u_inf, std::cout,
                                             std::cerr);
        }
        if (validate->parsed()) {
            srgbode::RunConfig rc = load(validate_opts);
            if (points > 0) rc.validate_points = points;
            if (inputs > 0) rc.validate_inputs_per_point = inputs;
            return srgbode::cli::run_validate(rc, std::cout, std::cerr);
        }
        if (lti->parsed()) return srgbode::cli::run_lti_reference(load(lti_opts), std::cout, std::cerr);
    } catch (const srgbode::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return srgbode::cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return srgbode::cli::kExitUsage;
    }
    return srgbode::cli::kExitUsage;
}
