#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "muxsim/multiplex.hpp"
#include "muxsim/oracle.hpp"
#include "muxsim/solver.hpp"

namespace muxsim {

// Malformed command-line or sweep request (exit code 2).
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 2;
inline constexpr int not_bracketed = 3;
inline constexpr int internal = 4;
}  // namespace exit_code

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// 12 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string format_real(double value);

// CSV: header row plus one line per row. JSON: array of objects keyed by
// the same column names; reals are rounded to 12 significant digits and
// non-finite reals become the strings used in CSV.
void write_table(std::ostream& out, const Table& table, OutputFormat format);

struct SweepSpec {
    double nbar_min = 1e-4;
    double nbar_max = 2.0;
    int nbar_steps = 50;
    bool nbar_log = true;
    std::vector<std::string> detectors{"binary", "pseudo-pnr:8", "pnr"};
    std::vector<double> eta_d{0.7};
    std::vector<double> eta_s{0.8};
    std::vector<double> eta_tau{0.99};
    std::vector<int> n_sources{1, 16};

    // Throws UsageError on empty grids, reversed ranges or bad values.
    void validate() const;
    std::vector<double> nbar_grid() const;
};

// One row per grid point; loops nest detector, eta_d, eta_s, eta_tau,
// n_sources, nbar (innermost).
Table run_scan(const SweepSpec& spec);

Table calibration_table(double target_snr, const MultiplexConfig& system, const CalibrationOptions& options,
                        const CalibrationResult& result);

Table calibration_error_table(double target_snr, const CalibrationError& error);

// A waiting-time system: either a real configuration calibrated to the
// common SNR, or the ideal deterministic reference (p_success = 1).
struct WaitSystem {
    std::string name;
    MultiplexConfig config;
    bool deterministic = false;
};

// Single binary sources at 80 MHz; 8-way binary, 4-way pseudo-PNR(8) and
// 16-way PNR at 1 MHz with eta_d = 0.7, eta_tau = 0.99, eta_s = 0.8; a
// 16-way PNR device with eta_d = 0.98, eta_s = 0.95; the deterministic
// reference at 1 MHz.
std::vector<WaitSystem> waiting_time_presets();

std::optional<WaitSystem> find_preset(const std::string& name);

// Rows (system, ..., n_photons, t_wait) for n_photons in [np_min, np_max].
Table run_wait(const std::vector<WaitSystem>& systems, int np_min, int np_max, double target_snr,
               const CalibrationOptions& options);

Table validation_table(const std::vector<MetricCheck>& checks, const EmpiricalMetrics& empirical);

}  // namespace muxsim
