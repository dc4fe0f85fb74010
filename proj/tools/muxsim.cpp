// muxsim: sweeps, SNR calibration, waiting times and Monte-Carlo validation
// for spatially multiplexed heralded single-photon sources.
//
// Exit codes: 0 success, 1 validation mismatch, 2 usage, 3 calibration not
// bracketed, 4 internal consistency failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "muxsim/errors.hpp"
#include "muxsim/report.hpp"

namespace {

using namespace muxsim;

struct SystemFlags {
    std::string detector = "binary";
    double eta_d = 0.7;
    double eta_s = 0.8;
    double eta_tau = 0.99;
    int sources = 1;
    double rep_rate = 0.0;

    MultiplexConfig config() const {
        MultiplexConfig c;
        c.detector = DetectorModel::parse(detector, eta_d);
        c.switch_efficiency = eta_s;
        c.delay_efficiency = eta_tau;
        c.n_sources = sources;
        if (rep_rate > 0.0) c.rep_rate = rep_rate;
        return c;
    }
};

void add_system_flags(CLI::App& cmd, SystemFlags& flags) {
    cmd.add_option("--detector", flags.detector, "binary, pnr or pseudo-pnr:M")->capture_default_str();
    cmd.add_option("--eta-d", flags.eta_d, "Lumped detector efficiency")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd.add_option("--eta-s", flags.eta_s, "Switch efficiency")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    cmd.add_option("--eta-tau", flags.eta_tau, "Delay-line efficiency")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd.add_option("--sources", flags.sources, "Number of multiplexed sources")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--rep-rate", flags.rep_rate, "Pump repetition rate in Hz (default 1 MHz switched, 80 MHz single)")
        ->check(CLI::PositiveNumber);
}

void add_reference_flag(CLI::App& cmd, std::string& reference) {
    cmd.add_option("--snr-reference", reference, "State whose SNR is fixed: heralded or delivered")
        ->check(CLI::IsMember({"heralded", "delivered"}))
        ->capture_default_str();
}

SnrReference to_reference(const std::string& name) {
    return name == "delivered" ? SnrReference::delivered : SnrReference::heralded;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        std::filesystem::path target(path);
        if (target.is_relative()) {
            if (const char* dir = std::getenv("MUXSIM_OUTPUT_DIR"); dir && *dir) target = std::filesystem::path(dir) / target;
        }
        file_.open(target);
        if (!file_) throw UsageError("cannot open output file " + target.string());
    }

    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

  private:
    std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for spatially multiplexed heralded single-photon sources", "muxsim"};
    app.set_config("--config", "", "TOML/INI file providing option defaults");
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "csv";
    std::string output;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--output", output, "Output file (relative paths resolve under $MUXSIM_OUTPUT_DIR)");

    // scan
    SweepSpec sweep;
    bool linear = false;
    auto* scan = app.add_subcommand("scan", "Evaluate metrics over a parameter grid");
    scan->add_option("--nbar-min", sweep.nbar_min)->capture_default_str();
    scan->add_option("--nbar-max", sweep.nbar_max)->capture_default_str();
    scan->add_option("--nbar-steps", sweep.nbar_steps)->capture_default_str();
    scan->add_flag("--linear", linear, "Linear instead of logarithmic nbar spacing");
    scan->add_option("--detector", sweep.detectors, "Detector descriptors")->delimiter(',')->capture_default_str();
    scan->add_option("--eta-d", sweep.eta_d)->delimiter(',')->capture_default_str();
    scan->add_option("--eta-s", sweep.eta_s)->delimiter(',')->capture_default_str();
    scan->add_option("--eta-tau", sweep.eta_tau)->delimiter(',')->capture_default_str();
    scan->add_option("--sources", sweep.n_sources)->delimiter(',')->capture_default_str();

    // calibrate
    SystemFlags calibrate_flags;
    double calibrate_snr = 100.0;
    std::string calibrate_reference = "heralded";
    CalibrationOptions calibrate_options;
    auto* calibrate = app.add_subcommand("calibrate", "Find the mean photon number giving a target SNR");
    add_system_flags(*calibrate, calibrate_flags);
    calibrate->add_option("--snr", calibrate_snr, "Target SNR")->check(CLI::PositiveNumber)->capture_default_str();
    add_reference_flag(*calibrate, calibrate_reference);
    calibrate->add_option("--bracket-lo", calibrate_options.bracket_lo)->capture_default_str();
    calibrate->add_option("--bracket-hi", calibrate_options.bracket_hi)->capture_default_str();

    // wait
    std::vector<std::string> wait_systems;
    for (const auto& preset : waiting_time_presets()) wait_systems.push_back(preset.name);
    int photons_min = 1;
    int photons_max = 10;
    double wait_snr = 100.0;
    std::string wait_reference = "heralded";
    auto* wait = app.add_subcommand("wait", "Waiting time to deliver N_p photons from N_p systems at fixed SNR");
    wait->add_option("--systems", wait_systems, "Preset systems")->delimiter(',')->capture_default_str();
    wait->add_option("--photons-min", photons_min)->capture_default_str();
    wait->add_option("--photons-max", photons_max)->capture_default_str();
    wait->add_option("--snr", wait_snr, "Common SNR")->check(CLI::PositiveNumber)->capture_default_str();
    add_reference_flag(*wait, wait_reference);

    // validate
    SystemFlags validate_flags;
    double validate_nbar = 0.1;
    std::int64_t trials = 1000000;
    std::uint64_t seed = 42;
    int threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    auto* validate = app.add_subcommand("validate", "Compare analytic metrics with a seeded Monte-Carlo run");
    add_system_flags(*validate, validate_flags);
    validate->add_option("--nbar", validate_nbar)->check(CLI::NonNegativeNumber)->capture_default_str();
    validate->add_option("--trials", trials)
        ->check(CLI::Range(std::int64_t{1000}, std::int64_t{1} << 40))
        ->capture_default_str();
    validate->add_option("--seed", seed)->capture_default_str();
    validate->add_option("--threads", threads, "Worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    const OutputFormat out_format = parse_format(format);
    try {
        Output out(output);
        if (*scan) {
            sweep.nbar_log = !linear;
            write_table(out.stream(), run_scan(sweep), out_format);
        } else if (*calibrate) {
            calibrate_options.reference = to_reference(calibrate_reference);
            const MultiplexConfig system = calibrate_flags.config();
            try {
                const CalibrationResult result = calibrate_nbar(calibrate_snr, system, calibrate_options);
                write_table(out.stream(), calibration_table(calibrate_snr, system, calibrate_options, result),
                            out_format);
            } catch (const CalibrationError& e) {
                write_table(out.stream(), calibration_error_table(calibrate_snr, e), out_format);
                std::cerr << "muxsim: " << e.what() << '\n';
                return e.reason() == CalibrationError::Reason::not_bracketed ? exit_code::not_bracketed
                                                                             : exit_code::internal;
            }
        } else if (*wait) {
            std::vector<WaitSystem> systems;
            for (const auto& name : wait_systems) {
                auto preset = find_preset(name);
                if (!preset) throw UsageError("unknown system preset '" + name + "'");
                systems.push_back(std::move(*preset));
            }
            CalibrationOptions options;
            options.reference = to_reference(wait_reference);
            write_table(out.stream(), run_wait(systems, photons_min, photons_max, wait_snr, options), out_format);
        } else if (*validate) {
            const MultiplexConfig config = validate_flags.config().with_nbar(validate_nbar);
            const SystemMetrics analytic = multiplexed_metrics(config);
            const EmpiricalMetrics empirical = simulate_system(config, trials, seed, threads);
            const auto checks = compare_with_analytic(analytic, empirical);
            write_table(out.stream(), validation_table(checks, empirical), out_format);
            if (empirical.clamped_draws != 0) {
                std::cerr << "muxsim: " << empirical.clamped_draws << " pair draws exceeded the cutoff\n";
                return exit_code::internal;
            }
            for (const auto& check : checks) {
                if (check.checked && !check.pass) return 1;
            }
        }
    } catch (const CalibrationError& e) {
        std::cerr << "muxsim: " << e.what() << '\n';
        return e.reason() == CalibrationError::Reason::not_bracketed ? exit_code::not_bracketed : exit_code::internal;
    } catch (const UsageError& e) {
        std::cerr << "muxsim: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const DomainError& e) {
        std::cerr << "muxsim: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::exception& e) {
        std::cerr << "muxsim: internal error: " << e.what() << '\n';
        return exit_code::internal;
    }
    return exit_code::ok;
}
