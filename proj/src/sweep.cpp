#include "tripart/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "tripart/errors.hpp"
#include "tripart/version.hpp"

namespace tripart {

using nlohmann::json;

std::string_view axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::delta: return "delta";
        case SweepAxis::j_coupling: return "j_coupling";
        case SweepAxis::gamma_m: return "gamma_m";
        case SweepAxis::m_th: return "m_th";
    }
    return "";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
    for (SweepAxis a : {SweepAxis::delta, SweepAxis::j_coupling, SweepAxis::gamma_m, SweepAxis::m_th}) {
        if (axis_name(a) == name) return a;
    }
    return std::nullopt;
}

SystemParams default_params() {
    SystemParams p;
    p.delta = 0.0;
    p.j_coupling = 0.1;
    p.omega_drive = 1.0;
    p.kappa = 1.0;
    p.gamma_c = 10.0;
    p.gamma_m = 10.0;
    p.m_th = 0.0;
    return p;
}

SystemParams SweepConfig::params_at(std::size_t i) const {
    SystemParams p = base_params;
    const double v = axis_values.at(i);
    switch (axis) {
        case SweepAxis::delta: p.delta = v; break;
        case SweepAxis::j_coupling: p.j_coupling = v; break;
        case SweepAxis::gamma_m: p.gamma_m = v; break;
        case SweepAxis::m_th: p.m_th = v; break;
    }
    if (couple_delta_to_j) p.delta = delta_sign * p.j_coupling;
    return p;
}

void SweepConfig::validate() const {
    try {
        base_params.validate();
    } catch (const ParameterError& e) {
        throw ConfigError("params", e.what());
    }
    if (axis_values.empty()) throw ConfigError("values", "must not be empty");
    const bool up = axis_values.size() < 2 || axis_values[1] > axis_values[0];
    for (std::size_t i = 0; i < axis_values.size(); ++i) {
        if (!std::isfinite(axis_values[i])) throw ConfigError("values", "entries must be finite");
        if (i > 0 && (up ? !(axis_values[i] > axis_values[i - 1])
                         : !(axis_values[i] < axis_values[i - 1]))) {
            throw ConfigError("values", "must be strictly monotone");
        }
    }
    if (couple_delta_to_j && axis == SweepAxis::delta) {
        throw ConfigError("couple_delta_to_j", "cannot be combined with a delta axis");
    }
    if (delta_sign != 1 && delta_sign != -1) throw ConfigError("delta_sign", "must be +1 or -1");
    if (truncation.cavity < 2 || truncation.mech < 2) {
        throw ConfigError("truncation", "levels must be at least (2, 2)");
    }
    if (!(truncation_tolerance > 0.0)) throw ConfigError("truncation_tolerance", "must be > 0");
    if (!(occupation_floor >= 0.0)) throw ConfigError("occupation_floor", "must be >= 0");
    for (std::size_t i = 0; i < axis_values.size(); ++i) {
        try {
            params_at(i).validate();
        } catch (const ParameterError& e) {
            throw ConfigError("values[" + std::to_string(i) + "]", e.what());
        }
    }
}

namespace {

template <class T>
T get_field(const json& doc, const char* key, const std::string& path) {
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(path + key, std::string("invalid value (") + e.what() + ")");
    }
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) throw ConfigError(path + key, "unknown key");
    }
}

std::vector<double> parse_values(const json& v) {
    if (v.is_array()) {
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) {
                throw ConfigError("values[" + std::to_string(i) + "]", "must be a number");
            }
            out.push_back(v[i].get<double>());
        }
        return out;
    }
    if (!v.is_object()) throw ConfigError("values", "must be an array or a range object");
    reject_unknown(v, {"start", "stop", "count", "spacing"}, "values.");
    const auto start = get_field<double>(v, "start", "values.");
    const auto stop = get_field<double>(v, "stop", "values.");
    const auto count = get_field<int>(v, "count", "values.");
    const std::string spacing = v.contains("spacing") ? get_field<std::string>(v, "spacing", "values.")
                                                      : std::string("linear");
    if (count < 1) throw ConfigError("values.count", "must be >= 1");
    if (spacing != "linear" && spacing != "log") {
        throw ConfigError("values.spacing", "must be \"linear\" or \"log\"");
    }
    if (spacing == "log" && !(start > 0.0 && stop > 0.0)) {
        throw ConfigError("values", "log spacing needs positive start and stop");
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        if (spacing == "linear") {
            out[i] = start + f * (stop - start);
        } else {
            out[i] = std::pow(10.0, std::log10(start) + f * (std::log10(stop) - std::log10(start)));
        }
    }
    // Pin the end points exactly.
    out.front() = start;
    if (count > 1) out.back() = stop;
    return out;
}

}  // namespace

SweepConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("", "config must be an object");
    reject_unknown(doc,
                   {"name", "params", "axis", "values", "couple_delta_to_j", "delta_sign",
                    "truncation", "output", "emit_elements", "check_truncation",
                    "strict_truncation", "truncation_tolerance", "occupation_floor"},
                   "");
    SweepConfig c;
    if (doc.contains("name")) c.name = get_field<std::string>(doc, "name", "");
    if (doc.contains("params")) {
        const json& p = doc.at("params");
        if (!p.is_object()) throw ConfigError("params", "must be an object");
        reject_unknown(p, {"delta", "j_coupling", "omega_drive", "kappa", "gamma_c", "gamma_m", "m_th"},
                       "params.");
        auto set = [&](const char* key, double& field) {
            if (p.contains(key)) field = get_field<double>(p, key, "params.");
        };
        set("delta", c.base_params.delta);
        set("j_coupling", c.base_params.j_coupling);
        set("omega_drive", c.base_params.omega_drive);
        set("kappa", c.base_params.kappa);
        set("gamma_c", c.base_params.gamma_c);
        set("gamma_m", c.base_params.gamma_m);
        set("m_th", c.base_params.m_th);
        try {
            c.base_params.validate();
        } catch (const ParameterError& e) {
            throw ConfigError("params." + std::string(e.what()).substr(0, std::string(e.what()).find(':')),
                              e.what());
        }
    }
    if (!doc.contains("axis")) throw ConfigError("axis", "missing");
    const auto axis = parse_axis(get_field<std::string>(doc, "axis", ""));
    if (!axis) throw ConfigError("axis", "must be one of delta, j_coupling, gamma_m, m_th");
    c.axis = *axis;
    if (!doc.contains("values")) throw ConfigError("values", "missing");
    c.axis_values = parse_values(doc.at("values"));
    if (doc.contains("couple_delta_to_j")) {
        c.couple_delta_to_j = get_field<bool>(doc, "couple_delta_to_j", "");
    }
    if (doc.contains("delta_sign")) c.delta_sign = get_field<int>(doc, "delta_sign", "");
    if (doc.contains("truncation")) {
        const auto t = get_field<std::vector<int>>(doc, "truncation", "");
        if (t.size() != 2) throw ConfigError("truncation", "must be [cavity_levels, mech_levels]");
        c.truncation = {t[0], t[1]};
    }
    if (doc.contains("output")) c.output_path = get_field<std::string>(doc, "output", "");
    if (doc.contains("emit_elements")) c.emit_elements = get_field<bool>(doc, "emit_elements", "");
    if (doc.contains("check_truncation")) {
        c.check_truncation = get_field<bool>(doc, "check_truncation", "");
    }
    if (doc.contains("strict_truncation")) {
        c.strict_truncation = get_field<bool>(doc, "strict_truncation", "");
    }
    if (doc.contains("truncation_tolerance")) {
        c.truncation_tolerance = get_field<double>(doc, "truncation_tolerance", "");
    }
    if (doc.contains("occupation_floor")) {
        c.occupation_floor = get_field<double>(doc, "occupation_floor", "");
    }
    c.validate();
    return c;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open config file");
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("", path + ": malformed config (" + e.what() + ")");
    }
    return parse_config(doc);
}

json config_to_json(const SweepConfig& c) {
    const SystemParams& p = c.base_params;
    return json{
        {"name", c.name},
        {"params",
         {{"delta", p.delta},
          {"j_coupling", p.j_coupling},
          {"omega_drive", p.omega_drive},
          {"kappa", p.kappa},
          {"gamma_c", p.gamma_c},
          {"gamma_m", p.gamma_m},
          {"m_th", p.m_th}}},
        {"axis", std::string(axis_name(c.axis))},
        {"values", c.axis_values},
        {"couple_delta_to_j", c.couple_delta_to_j},
        {"delta_sign", c.delta_sign},
        {"truncation", {c.truncation.cavity, c.truncation.mech}},
        {"output", c.output_path},
        {"emit_elements", c.emit_elements},
        {"check_truncation", c.check_truncation},
        {"strict_truncation", c.strict_truncation},
        {"truncation_tolerance", c.truncation_tolerance},
        {"occupation_floor", c.occupation_floor},
    };
}

SweepRow evaluate_point(const SystemParams& params, const SweepConfig& config) {
    SweepRow row;
    row.params = params;
    try {
        const HilbertSpace space = config.truncation.space();
        const auto [rho, report] = solve_steady(build_liouvillian(params, space), space);
        row.report = report;
        row.record = evaluate(rho, space, config.occupation_floor);
        if (config.check_truncation) {
            const Truncation big = config.truncation.doubled();
            const auto [rho_big, report_big] = solve_steady(params, big);
            const ObservableRecord hi = evaluate(rho_big, big.space(), config.occupation_floor);
            row.report.truncation_checked = true;
            row.report.truncation_change = max_relative_change(*row.record, hi);
            row.report.truncation_converged =
                row.report.truncation_change < config.truncation_tolerance;
        }
    } catch (const Error& e) {
        row.record.reset();
        row.error = e.what();
    }
    return row;
}

SweepResult run_sweep(const SweepConfig& config, Execution exec) {
    config.validate();
    SweepResult result;
    result.config = config;
    result.version = kVersion;
    result.timestamp = utc_timestamp();
    const std::size_t n = config.axis_values.size();
    result.rows.resize(n);

    if (exec == Execution::parallel) {
        const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            const auto k = static_cast<std::size_t>(i);
            result.rows[k] = evaluate_point(config.params_at(k), config);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            result.rows[i] = evaluate_point(config.params_at(i), config);
        }
    }
    for (std::size_t i = 0; i < n; ++i) result.rows[i].axis_value = config.axis_values[i];

    if (config.check_truncation && config.strict_truncation) {
        for (std::size_t i = 0; i < n; ++i) {
            const SweepRow& r = result.rows[i];
            if (r.record && !r.report.truncation_converged) {
                std::ostringstream os;
                os << "truncation not converged at point " << i << " (" << axis_name(config.axis)
                   << " = " << format_double(r.axis_value) << "): relative change "
                   << r.report.truncation_change << " >= " << config.truncation_tolerance
                   << " between (" << config.truncation.cavity << ", " << config.truncation.mech
                   << ") and doubled levels";
                throw TruncationError(i, r.axis_value, os.str());
            }
        }
    }
    return result;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::string> csv_header(bool emit_elements) {
    std::vector<std::string> h{"axis", "mean_n", "mean_m", "g2_n", "g2_m", "g2_nm", "log_neg"};
    if (emit_elements) {
        for (std::string_view label : NamedElements::labels) h.emplace_back(label);
    }
    h.emplace_back("residual");
    h.emplace_back("converged");
    return h;
}

std::string format_csv(const SweepResult& result) {
    const SweepConfig& c = result.config;
    std::ostringstream os;
    os << "# tripart " << result.version << " config=" << (c.name.empty() ? "-" : c.name)
       << " axis=" << axis_name(c.axis) << " truncation=" << c.truncation.cavity << "x"
       << c.truncation.mech << " generated=" << result.timestamp << "\n";
    const auto header = csv_header(c.emit_elements);
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";

    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("undef"); };
    for (const SweepRow& r : result.rows) {
        os << format_double(r.axis_value);
        const std::size_t n_values = header.size() - 1;
        if (!r.record) {
            for (std::size_t k = 0; k < n_values; ++k) {
                os << "," << (k + 1 == n_values ? "false" : "error");
            }
            os << "\n";
            continue;
        }
        const ObservableRecord& o = *r.record;
        os << "," << format_double(o.mean_n) << "," << format_double(o.mean_m) << "," << opt(o.g2_n)
           << "," << opt(o.g2_m) << "," << opt(o.g2_nm) << "," << format_double(o.log_neg);
        if (c.emit_elements) {
            for (double v : o.elements.values()) os << "," << format_double(v);
        }
        os << "," << format_double(r.report.residual_norm) << ","
           << (!r.report.truncation_checked ? "unchecked"
               : r.report.truncation_converged ? "true"
                                               : "false")
           << "\n";
    }
    return os.str();
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    out << format_csv(result);
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

json result_to_json(const SweepResult& result) {
    json rows = json::array();
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    for (const SweepRow& r : result.rows) {
        json row{{"axis_value", r.axis_value},
                 {"residual", r.report.residual_norm},
                 {"truncation_checked", r.report.truncation_checked},
                 {"truncation_converged", r.report.truncation_converged},
                 {"truncation_change", r.report.truncation_checked
                                           ? json(r.report.truncation_change)
                                           : json(nullptr)},
                 {"levels_used", {r.report.levels_used.cavity, r.report.levels_used.mech}}};
        if (r.record) {
            const ObservableRecord& o = *r.record;
            row["observables"] = {{"mean_n", o.mean_n}, {"mean_m", o.mean_m}, {"g2_n", opt(o.g2_n)},
                                  {"g2_m", opt(o.g2_m)}, {"g2_nm", opt(o.g2_nm)},
                                  {"log_neg", o.log_neg}};
            json el;
            const auto values = o.elements.values();
            for (std::size_t k = 0; k < values.size(); ++k) {
                el[std::string(NamedElements::labels[k])] = values[k];
            }
            row["elements"] = el;
        } else {
            row["error"] = r.error;
        }
        rows.push_back(std::move(row));
    }
    return json{{"metadata",
                 {{"version", result.version},
                  {"timestamp", result.timestamp},
                  {"config", config_to_json(result.config)}}},
                {"rows", rows}};
}

void emit_json(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    out << result_to_json(result).dump(2) << "\n";
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

std::string json_path_for(const std::string& csv_path) {
    const auto slash = csv_path.find_last_of('/');
    const auto dot = csv_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return csv_path + ".json";
    }
    return csv_path.substr(0, dot) + ".json";
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open for reading");
    auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        return out;
    };
    CsvTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            t.metadata = line;
        } else if (t.header.empty()) {
            t.header = split(line);
        } else {
            t.rows.push_back(split(line));
        }
    }
    return t;
}

}  // namespace tripart
