// Command-line front end: parameter sweeps, single points and the
// acceptance suite.
//
// Exit codes: 0 success, 1 config error, 2 solver/convergence failure,
// 3 I/O failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tripart/acceptance.hpp"
#include "tripart/errors.hpp"
#include "tripart/sweep.hpp"
#include "tripart/version.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kSolverError = 2, kIoError = 3 };

struct SweepFlags {
    std::string config_path;
    std::vector<int> truncation;
    bool no_strict = false;
    bool no_check = false;
    bool serial = false;
    std::string output;
};

struct PointFlags {
    tripart::SystemParams params = tripart::default_params();
    std::vector<int> truncation;
    bool no_check = false;
    bool json = false;
};

void apply_truncation(const std::vector<int>& t, tripart::SweepConfig& c) {
    if (t.empty()) return;
    c.truncation = {t.at(0), t.at(1)};
}

int run_sweep_command(const SweepFlags& f) {
    tripart::SweepConfig config = tripart::load_config(f.config_path);
    apply_truncation(f.truncation, config);
    if (f.no_strict) config.strict_truncation = false;
    if (f.no_check) config.check_truncation = false;
    if (!f.output.empty()) config.output_path = f.output;
    config.validate();

    const tripart::SweepResult result =
        tripart::run_sweep(config, f.serial ? tripart::Execution::serial : tripart::Execution::parallel);
    if (config.output_path.empty()) {
        std::cout << tripart::format_csv(result);
    } else {
        const auto parent = std::filesystem::path(config.output_path).parent_path();
        std::error_code ec;
        if (!parent.empty()) std::filesystem::create_directories(parent, ec);
        if (ec) throw tripart::IoError(parent.string(), "cannot create directory: " + ec.message());
        tripart::emit_csv(result, config.output_path);
        const std::string json_path = tripart::json_path_for(config.output_path);
        tripart::emit_json(result, json_path);
        std::cerr << "wrote " << result.rows.size() << " rows to " << config.output_path << " and "
                  << json_path << "\n";
    }
    std::size_t failed = 0;
    for (const auto& row : result.rows) failed += row.record ? 0 : 1;
    if (failed > 0) {
        std::cerr << failed << " point(s) failed to solve; see the error entries\n";
        return kSolverError;
    }
    return kOk;
}

int run_point_command(const PointFlags& f) {
    tripart::SweepConfig config;
    config.base_params = f.params;
    config.axis = tripart::SweepAxis::delta;
    config.axis_values = {f.params.delta};
    apply_truncation(f.truncation, config);
    config.check_truncation = !f.no_check;
    config.validate();

    const tripart::SweepRow row = tripart::evaluate_point(f.params, config);
    if (!row.record) {
        std::cerr << "solve failed: " << row.error << "\n";
        return kSolverError;
    }
    if (f.json) {
        tripart::SweepResult result;
        result.config = config;
        result.rows = {row};
        result.rows[0].axis_value = f.params.delta;
        result.version = tripart::kVersion;
        result.timestamp = tripart::utc_timestamp();
        std::cout << tripart::result_to_json(result)["rows"][0].dump(2) << "\n";
        return kOk;
    }
    const tripart::ObservableRecord& r = *row.record;
    auto opt = [](const std::optional<double>& v) {
        return v ? tripart::format_double(*v) : std::string("undef");
    };
    std::cout << "mean_n    " << tripart::format_double(r.mean_n) << "\n"
              << "mean_m    " << tripart::format_double(r.mean_m) << "\n"
              << "g2_n      " << opt(r.g2_n) << "\n"
              << "g2_m      " << opt(r.g2_m) << "\n"
              << "g2_nm     " << opt(r.g2_nm) << "\n"
              << "log_neg   " << tripart::format_double(r.log_neg) << "\n";
    const auto values = r.elements.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::printf("%-9s %s\n", std::string(tripart::NamedElements::labels[i]).c_str(),
                    tripart::format_double(values[i]).c_str());
    }
    std::cout << "residual  " << tripart::format_double(row.report.residual_norm) << "\n"
              << "converged "
              << (!row.report.truncation_checked ? "unchecked"
                  : row.report.truncation_converged ? "true"
                                                    : "false")
              << "\n";
    return kOk;
}

int run_check_command() {
    const auto results = tripart::acceptance::run_all([](const auto& r) {
        std::cout << tripart::acceptance::format_line(r) << std::endl;
    });
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? kOk : kSolverError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state statistics of a driven atom-photon-phonon system"};
    app.set_version_flag("--version", std::string(tripart::kVersion));
    app.require_subcommand(1);

    SweepFlags sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep from a config file");
    sweep_cmd->add_option("config", sweep.config_path, "Sweep config (JSON)")->required();
    sweep_cmd->add_option("--truncation", sweep.truncation, "Cavity and mechanical Fock levels")
        ->expected(2);
    sweep_cmd->add_flag("--no-strict-truncation", sweep.no_strict,
                        "Record non-converged truncation instead of aborting");
    sweep_cmd->add_flag("--no-truncation-check", sweep.no_check, "Skip the doubled-level comparison");
    sweep_cmd->add_flag("--serial", sweep.serial, "Evaluate points on one thread");
    sweep_cmd->add_option("--output", sweep.output, "CSV output path (JSON written alongside)");

    PointFlags point;
    auto* point_cmd = app.add_subcommand("point", "Evaluate one parameter point");
    point_cmd->add_option("--delta", point.params.delta, "Detuning / kappa");
    point_cmd->add_option("--j", point.params.j_coupling, "Tripartite coupling / kappa");
    point_cmd->add_option("--omega", point.params.omega_drive, "Atomic drive / kappa");
    point_cmd->add_option("--kappa", point.params.kappa, "Atomic damping");
    point_cmd->add_option("--gamma-c", point.params.gamma_c, "Cavity damping / kappa");
    point_cmd->add_option("--gamma-m", point.params.gamma_m, "Mechanical damping / kappa");
    point_cmd->add_option("--m-th", point.params.m_th, "Thermal phonon number");
    point_cmd->add_option("--truncation", point.truncation, "Cavity and mechanical Fock levels")
        ->expected(2);
    point_cmd->add_flag("--no-truncation-check", point.no_check, "Skip the doubled-level comparison");
    point_cmd->add_flag("--json", point.json, "Print the record as JSON");

    auto* check_cmd = app.add_subcommand("check", "Run the acceptance and invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*sweep_cmd) return run_sweep_command(sweep);
        if (*point_cmd) return run_point_command(point);
        if (*check_cmd) return run_check_command();
    } catch (const tripart::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const tripart::ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const tripart::DimensionError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const tripart::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIoError;
    } catch (const tripart::Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kSolverError;
    }
    return kOk;
}
