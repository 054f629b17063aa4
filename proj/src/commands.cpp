#include "srgbode/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "srgbode/surface_io.hpp"

namespace srgbode::cli {

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& config, const std::string& name) {
    fs::create_directories(config.out_dir);
    return (fs::path(config.out_dir) / name).string();
}

void print_record(const GainRecord& rec, std::ostream& out) {
    out << "omega              = " << format_double(rec.omega) << "\n"
        << "U                  = " << format_double(rec.U) << "\n"
        << "r_omega_A          = " << format_double(rec.r_omega_A) << "\n"
        << "r_partial_omega_A  = " << format_double(rec.r_partial_omega_A) << "\n"
        << "A_bound            = " << format_double(rec.A_bound) << "\n"
        << "gamma              = " << format_double(rec.gamma) << "\n"
        << "r_omega_inf        = " << format_double(rec.r_omega_inf) << "\n"
        << "bisection_iters    = " << rec.bisection_iters << "\n"
        << "feasible           = " << (rec.feasible ? "true" : "false") << "\n";
}

}  // namespace

int run_surface(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const auto start = std::chrono::steady_clock::now();
        const GainSurface surface = gain_surface(config.analysis);
        RunTimings timings;
        timings.surface_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        write_file_atomic(out_path(config, "surface.csv"), surface_to_csv(surface));
        write_file_atomic(out_path(config, "surface_meta.json"),
                          surface_metadata_json(surface, timings));
        write_file_atomic(out_path(config, "plot_surface.py"), plot_script_text());
        out << "surface: " << surface.records.size() << " grid points, wellposedness margin r = "
            << format_double(surface.wellposedness_r) << "\n"
            << "wrote surface.csv, surface_meta.json, plot_surface.py in " << config.out_dir
            << "\n";
        return kExitOk;
    } catch (const CertificationError& e) {
        err << "certification failed: " << e.what() << "\n";
        return kExitCertification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int run_analyze(const RunConfig& config, double omega, double U, bool u_infinity,
                std::ostream& out, std::ostream& err) {
    try {
        if (!(omega > 0.0)) throw ConfigError("analyze: omega must be > 0");
        if (!u_infinity && !(U >= 0.0)) throw ConfigError("analyze: U must be >= 0");
        AnalysisConfig one = config.analysis;
        one.omega_grid = {omega};
        one.u_grid = {u_infinity ? 0.0 : U};
        GainSurface surface = gain_surface(one);
        GainRecord rec = surface.records.front();
        if (u_infinity) {
            // asymptotic column: sector/slope disks at A -> inf
            const auto region =
                inverse_srg_region(one.system, omega, one.truncation);
            const double inf = std::numeric_limits<double>::infinity();
            rec.U = inf;
            rec.A_bound = inf;
            rec.bisection_iters = 0;
            rec.r_omega_A = rec.r_omega_inf;
            rec.r_partial_omega_A =
                margin_for_region(region, slope_bounds(one.nonlinearity, inf));
            rec.gamma = rec.r_omega_inf > 0.0 ? 1.0 / rec.r_omega_inf : inf;
            rec.feasible = rec.r_omega_inf > 0.0 && rec.r_partial_omega_A > 0.0;
        }
        out << "wellposedness_r    = " << format_double(surface.wellposedness_r) << "\n";
        print_record(rec, out);
        return kExitOk;
    } catch (const CertificationError& e) {
        err << "certification failed: " << e.what() << "\n";
        return kExitCertification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int run_validate_on_surface(const GainSurface& surface, const RunConfig& config,
                            std::ostream& out, std::ostream& err) {
    try {
        const ValidationReport report =
            validate_surface(surface, config.validate_points, config.validate_inputs_per_point,
                             config.validate_margin, config.seed, config.sim);
        write_file_atomic(out_path(config, "validation.json"), validation_report_json(report));
        out << "validation: " << report.total_samples << " simulations at "
            << report.points.size() << " grid points, " << report.total_violations
            << " violation(s)\n"
            << "wrote validation.json in " << config.out_dir << "\n";
        if (report.total_violations > 0) {
            err << "validation found " << report.total_violations
                << " bound violation(s); see validation.json\n";
            return kExitViolation;
        }
        return kExitOk;
    } catch (const CertificationError& e) {
        err << "certification failed: " << e.what() << "\n";
        return kExitCertification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int run_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const GainSurface surface = gain_surface(config.analysis);
        return run_validate_on_surface(surface, config, out, err);
    } catch (const CertificationError& e) {
        err << "certification failed: " << e.what() << "\n";
        return kExitCertification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int run_lti_reference(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const Interval slope0 = slope_bounds(config.analysis.nonlinearity, 0.0);
        const double k0 = 0.5 * (slope0.lo + slope0.hi);
        const TransferFunction loop = linearized_loop(config.analysis.system, k0);
        std::ostringstream csv;
        csv << "omega,lti_gain\n";
        csv << "0," << format_double(std::abs(eval_freq(loop, 0.0))) << "\n";
        for (double w : config.analysis.omega_grid)
            csv << format_double(w) << ',' << format_double(std::abs(eval_freq(loop, w))) << "\n";
        write_file_atomic(out_path(config, "lti_reference.csv"), csv.str());
        out << "wrote lti_reference.csv in " << config.out_dir << " (linearization slope "
            << format_double(k0) << ")\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace srgbode::cli
