#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "muxsim/multiplex.hpp"

namespace muxsim {

// SplitMix64 (Steele, Lea & Flood). Small state, so a fresh stream per
// trial is cheap; that is what makes sharded runs reproducible.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

  private:
    std::uint64_t state_;
};

// Independent stream for one trial, derived from the root seed and the trial
// index only.
SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial);

struct TrialOutcome {
    bool heralded = false;
    std::optional<int> selected_source;
    // Idler photons of the selected source before routing loss.
    int idler_photons = 0;
    int delivered_photons = 0;
    // Raw detector outcome of every source (clicks, photons or bins).
    std::vector<int> detector_outcomes;
    int clamped_draws = 0;
};

// Samples the physical process directly: thermal pair numbers by inverse
// CDF, per-photon Bernoulli detection (uniform bin assignment for
// pseudo-PNR), lowest-index selection among successful sources and
// per-photon survival through the switch tree.
class SystemSampler {
  public:
    explicit SystemSampler(const MultiplexConfig& config);

    TrialOutcome run_trial(std::uint64_t seed, std::uint64_t trial) const;

    // Pair numbers above this are clamped (and counted).
    int pair_cap() const { return pair_cap_; }

    // Allocation-free variant for bulk runs; `bins` is scratch space.
    void run_trial_into(std::uint64_t seed, std::uint64_t trial, TrialOutcome& out,
                        std::vector<std::uint8_t>& bins) const;

  private:
    MultiplexConfig config_;
    int pair_cap_;
    double log_ratio_;
    double transmission_;
};

struct EmpiricalEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct EmpiricalMetrics {
    std::int64_t trials = 0;
    std::int64_t heralds = 0;
    std::int64_t heralded_single = 0;  // idler held exactly one photon
    std::int64_t heralded_multi = 0;   // idler held two or more
    std::int64_t delivered_single = 0;
    std::int64_t delivered_multi = 0;
    std::int64_t clamped_draws = 0;

    EmpiricalEstimate p_heralding;
    EmpiricalEstimate fidelity;
    EmpiricalEstimate p_success;
    EmpiricalEstimate snr;
    EmpiricalEstimate delivered_snr;
};

// Runs `trials` independent trials; threads > 1 shards the trial range and
// yields bit-identical counts to the sequential run.
EmpiricalMetrics simulate_system(const MultiplexConfig& config, std::int64_t trials, std::uint64_t seed,
                                 int threads = 1);

struct MetricCheck {
    std::string metric;
    double analytic = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    // False when the sample is too small for the normal approximation.
    bool checked = true;
    bool pass = true;
};

// |empirical - analytic| <= sigmas * standard error for p_heralding,
// fidelity and p_success (binomial error evaluated at the analytic value),
// and for both SNRs (delta-method error from the counts).
std::vector<MetricCheck> compare_with_analytic(const SystemMetrics& analytic, const EmpiricalMetrics& empirical,
                                               double sigmas = 3.0);

}  // namespace muxsim
