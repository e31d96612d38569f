#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tripart/errors.hpp"
#include "tripart/model.hpp"
#include "tripart/observables.hpp"
#include "tripart/steady_state.hpp"

namespace tripart {

enum class SweepAxis { delta, j_coupling, gamma_m, m_th };

std::string_view axis_name(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string_view name);

/// Weak coupling on resonance (delta = 0, J = 0.1, Omega = kappa = 1,
/// gamma_c = gamma_m = 10, m_th = 0). Fills any field a config leaves out.
SystemParams default_params();

struct SweepConfig {
    std::string name;
    SystemParams base_params = default_params();
    SweepAxis axis = SweepAxis::delta;
    std::vector<double> axis_values;
    /// Sets delta = delta_sign * J at every point.
    bool couple_delta_to_j = false;
    int delta_sign = 1;
    Truncation truncation{5, 5};
    std::string output_path;
    bool emit_elements = true;
    bool check_truncation = true;
    bool strict_truncation = true;
    double truncation_tolerance = 1e-6;
    double occupation_floor = kDefaultOccupationFloor;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    SystemParams params_at(std::size_t i) const;
};

/// Parses the structured config (JSON). Unknown keys are rejected.
SweepConfig parse_config(const nlohmann::json& doc);
SweepConfig load_config(const std::string& path);
/// Fully resolved config; parse_config(config_to_json(c)) reproduces c.
nlohmann::json config_to_json(const SweepConfig& config);

struct SweepRow {
    double axis_value = 0.0;
    SystemParams params;
    std::optional<ObservableRecord> record;  // empty when the solve failed
    SolveReport report;
    std::string error;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;
    std::string version;
    std::string timestamp;
};

enum class Execution { serial, parallel };

/// Solves, evaluates and (optionally) truncation-checks one parameter point.
/// Failures are captured in SweepRow::error.
SweepRow evaluate_point(const SystemParams& params, const SweepConfig& config);

/// Points are independent; Execution::parallel distributes them over OpenMP
/// threads but rows always come back in axis order. With strict truncation a
/// non-converged point raises TruncationError after the sweep.
SweepResult run_sweep(const SweepConfig& config, Execution exec = Execution::parallel);

class TruncationError : public ConvergenceError {
public:
    TruncationError(std::size_t index, double axis_value, const std::string& what)
        : ConvergenceError(what), index_(index), axis_value_(axis_value) {}
    std::size_t index() const { return index_; }
    double axis_value() const { return axis_value_; }

private:
    std::size_t index_;
    double axis_value_;
};

/// Column names in output order.
std::vector<std::string> csv_header(bool emit_elements);

/// First line is a '#' metadata comment (version, axis, timestamp); then the
/// header and one row per point. Undefined correlations print as "undef",
/// failed points as "error".
void emit_csv(const SweepResult& result, const std::string& path);
std::string format_csv(const SweepResult& result);

nlohmann::json result_to_json(const SweepResult& result);
void emit_json(const SweepResult& result, const std::string& path);

/// Companion JSON path for a CSV output path (extension replaced by .json).
std::string json_path_for(const std::string& csv_path);

struct CsvTable {
    std::string metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

/// "%.17e" rendering used throughout the output.
std::string format_double(double v);

/// UTC time in ISO 8601.
std::string utc_timestamp();

}  // namespace tripart
