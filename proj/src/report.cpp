#include "muxsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include <json.hpp>

#include "muxsim/errors.hpp"

namespace muxsim {

namespace {

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string cell_text(const Cell& cell) {
    if (const auto* real = std::get_if<double>(&cell)) return format_real(*real);
    if (const auto* integer = std::get_if<std::int64_t>(&cell)) return std::to_string(*integer);
    return std::get<std::string>(cell);
}

nlohmann::json cell_json(const Cell& cell) {
    if (const auto* real = std::get_if<double>(&cell)) {
        if (!std::isfinite(*real)) return format_real(*real);
        return std::strtod(format_real(*real).c_str(), nullptr);
    }
    if (const auto* integer = std::get_if<std::int64_t>(&cell)) return *integer;
    return std::get<std::string>(cell);
}

void check_unit(const std::vector<double>& values, const char* what) {
    if (values.empty()) throw UsageError(std::string("empty grid for ") + what);
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0)) throw UsageError(std::string(what) + " values must lie in [0, 1]");
    }
}

std::vector<Cell> system_cells(const MultiplexConfig& config) {
    return {config.detector.label(), config.detector.efficiency(), config.switch_efficiency, config.delay_efficiency,
            static_cast<std::int64_t>(config.n_sources)};
}

std::string reference_name(SnrReference reference) {
    return reference == SnrReference::heralded ? "heralded" : "delivered";
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw UsageError("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
    if (format == OutputFormat::csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? "," : "") << csv_field(table.columns[i]);
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(row[i]));
            out << '\n';
        }
        return;
    }
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json record = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            record[table.columns[i]] = cell_json(row[i]);
        }
        records.push_back(std::move(record));
    }
    out << records.dump(2) << '\n';
}

void SweepSpec::validate() const {
    if (nbar_steps < 1) throw UsageError("nbar grid needs at least one step");
    if (!(std::isfinite(nbar_min) && std::isfinite(nbar_max) && nbar_min >= 0.0)) {
        throw UsageError("nbar range must be finite and non-negative");
    }
    if (nbar_min > nbar_max) throw UsageError("nbar range has min > max");
    if (nbar_log && nbar_min <= 0.0 && nbar_steps > 1) throw UsageError("logarithmic nbar grid needs nbar-min > 0");
    if (detectors.empty()) throw UsageError("empty grid for detector");
    for (const auto& d : detectors) {
        try {
            DetectorModel::parse(d, 0.5);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }
    check_unit(eta_d, "eta-d");
    check_unit(eta_s, "eta-s");
    check_unit(eta_tau, "eta-tau");
    if (n_sources.empty()) throw UsageError("empty grid for sources");
    for (int n : n_sources) {
        if (n < 1) throw UsageError("source counts must be at least 1");
    }
}

std::vector<double> SweepSpec::nbar_grid() const {
    std::vector<double> grid;
    if (nbar_steps == 1) return {nbar_min};
    for (int i = 0; i < nbar_steps; ++i) {
        const double t = static_cast<double>(i) / (nbar_steps - 1);
        grid.push_back(nbar_log ? nbar_min * std::pow(nbar_max / nbar_min, t) : nbar_min + t * (nbar_max - nbar_min));
    }
    grid.back() = nbar_max;
    return grid;
}

Table run_scan(const SweepSpec& spec) {
    spec.validate();
    Table table{{"nbar", "n_sources", "detector", "eta_d", "eta_s", "eta_tau", "p_heralding", "fidelity", "snr",
                 "delivered_snr", "p_success"},
                {}};
    const std::vector<double> grid = spec.nbar_grid();
    for (const auto& descriptor : spec.detectors) {
        for (double eta_d : spec.eta_d) {
            const DetectorModel detector = DetectorModel::parse(descriptor, eta_d);
            for (double eta_s : spec.eta_s) {
                for (double eta_tau : spec.eta_tau) {
                    for (int n : spec.n_sources) {
                        for (double nbar : grid) {
                            MultiplexConfig config;
                            config.n_sources = n;
                            config.switch_efficiency = eta_s;
                            config.delay_efficiency = eta_tau;
                            config.detector = detector;
                            config.nbar = nbar;
                            const SystemMetrics m = multiplexed_metrics(config);
                            table.rows.push_back({nbar, static_cast<std::int64_t>(n), detector.label(), eta_d, eta_s,
                                                  eta_tau, m.p_heralding, m.fidelity, m.snr, m.delivered_snr,
                                                  m.p_success});
                        }
                    }
                }
            }
        }
    }
    return table;
}

Table calibration_table(double target_snr, const MultiplexConfig& system, const CalibrationOptions& options,
                        const CalibrationResult& result) {
    const SystemMetrics m = multiplexed_metrics(system.with_nbar(result.nbar_star));
    Table table{{"status", "target_snr", "snr_reference", "detector", "eta_d", "eta_s", "eta_tau", "n_sources",
                 "nbar_star", "achieved_snr", "iterations", "bracket_lo", "bracket_hi", "p_heralding", "fidelity",
                 "p_success"},
                {}};
    std::vector<Cell> row{std::string("ok"), target_snr, reference_name(options.reference)};
    for (auto& cell : system_cells(system)) row.push_back(std::move(cell));
    for (Cell cell : std::vector<Cell>{result.nbar_star, result.achieved_snr,
                                       static_cast<std::int64_t>(result.iterations), result.bracket.first,
                                       result.bracket.second, m.p_heralding, m.fidelity, m.p_success}) {
        row.push_back(std::move(cell));
    }
    table.rows.push_back(std::move(row));
    return table;
}

Table calibration_error_table(double target_snr, const CalibrationError& error) {
    return {{"status", "error", "target_snr", "message"},
            {{std::string("error"), error.code(), target_snr, std::string(error.what())}}};
}

std::vector<WaitSystem> waiting_time_presets() {
    auto make = [](std::string name, int n, DetectorModel detector, double eta_s, double eta_tau) {
        MultiplexConfig config;
        config.n_sources = n;
        config.detector = detector;
        config.switch_efficiency = eta_s;
        config.delay_efficiency = eta_tau;
        return WaitSystem{std::move(name), config, false};
    };
    std::vector<WaitSystem> presets{
        make("single-binary", 1, DetectorModel::binary(0.7), 0.8, 0.99),
        make("mux8-binary", 8, DetectorModel::binary(0.7), 0.8, 0.99),
        make("mux4-pseudo-pnr8", 4, DetectorModel::pseudo_pnr(8, 0.7), 0.8, 0.99),
        make("mux16-pnr", 16, DetectorModel::pnr(0.7), 0.8, 0.99),
        make("mux16-pnr-high-performance", 16, DetectorModel::pnr(0.98), 0.95, 0.99),
    };
    WaitSystem deterministic = make("deterministic", 1, DetectorModel::pnr(1.0), 1.0, 1.0);
    deterministic.config.rep_rate = kMultiplexedRepRate;
    deterministic.deterministic = true;
    presets.push_back(std::move(deterministic));
    return presets;
}

std::optional<WaitSystem> find_preset(const std::string& name) {
    for (auto& preset : waiting_time_presets()) {
        if (preset.name == name) return preset;
    }
    return std::nullopt;
}

Table run_wait(const std::vector<WaitSystem>& systems, int np_min, int np_max, double target_snr,
               const CalibrationOptions& options) {
    if (np_min < 1 || np_min > np_max) throw UsageError("photon-number range must satisfy 1 <= min <= max");
    if (systems.empty()) throw UsageError("no systems selected");
    Table table{{"system", "detector", "eta_d", "eta_s", "eta_tau", "n_sources", "rep_rate", "nbar", "p_success",
                 "n_photons", "t_wait"},
                {}};
    for (const auto& system : systems) {
        double p_success = 1.0;
        Cell nbar = std::string();
        if (!system.deterministic) {
            const CalibrationResult calibration = calibrate_nbar(target_snr, system.config, options);
            p_success = multiplexed_metrics(system.config.with_nbar(calibration.nbar_star)).p_success;
            nbar = calibration.nbar_star;
        }
        const double rate = system.config.effective_rep_rate();
        for (int np = np_min; np <= np_max; ++np) {
            std::vector<Cell> row{system.name};
            for (auto& cell : system_cells(system.config)) row.push_back(std::move(cell));
            for (Cell cell : std::vector<Cell>{rate, nbar, p_success, static_cast<std::int64_t>(np),
                                               waiting_time(p_success, rate, np)}) {
                row.push_back(std::move(cell));
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

Table validation_table(const std::vector<MetricCheck>& checks, const EmpiricalMetrics& empirical) {
    Table table{{"metric", "analytic", "empirical", "std_error", "result"}, {}};
    for (const auto& check : checks) {
        table.rows.push_back({check.metric, check.analytic, check.empirical, check.std_error,
                              std::string(!check.checked ? "skip" : check.pass ? "pass" : "fail")});
    }
    table.rows.push_back({std::string("clamped_draws"), 0.0, static_cast<double>(empirical.clamped_draws), 0.0,
                          std::string(empirical.clamped_draws == 0 ? "pass" : "fail")});
    return table;
}

}  // namespace muxsim
