#pragma once

#include <optional>
#include <span>
#include <vector>

#include "muxsim/channel.hpp"
#include "muxsim/detectors.hpp"
#include "muxsim/source.hpp"

namespace muxsim {

inline constexpr double kMultiplexedRepRate = 1e6;
inline constexpr double kSingleSourceRepRate = 80e6;

// N identical sources feeding a binary switch tree. The detector efficiency
// lives in `detector`; switch and delay efficiencies only matter for N > 1.
struct MultiplexConfig {
    int n_sources = 1;
    double switch_efficiency = 0.8;
    double delay_efficiency = 0.99;
    // Unset: 1 MHz when switched, 80 MHz for a bare source.
    std::optional<double> rep_rate;
    DetectorModel detector = DetectorModel::binary(0.7);
    double nbar = 0.0;

    double effective_rep_rate() const;
    LossBudget loss_budget() const;
    MultiplexConfig with_nbar(double value) const;

    // Throws DomainError on a malformed configuration.
    void validate() const;
};

// Kronecker product of two heralding probability vectors. Entries with
// either index equal to success_index mean at least one source heralded.
struct TwoSourceCombination {
    double p_success_any = 0.0;
    double p_none = 0.0;
    std::vector<std::vector<double>> joint;
};

TwoSourceCombination combine_two(std::span<const double> p_h_a, std::span<const double> p_h_b, int success_index);

// Collapses a combination to the two-outcome vector seen by the next stage:
// p_success_any at success_index, p_none in the first other slot.
std::vector<double> collapse(const TwoSourceCombination& combination, int success_index);

// Heralding probability of n_sources identical sources, cascading
// combine_two pairwise up a balanced tree. An odd source at any level is
// carried to the next one unchanged.
double cascaded_heralding_probability(std::span<const double> p_h, int success_index, int n_sources);

// 1 - (1 - p_single)^n_sources, evaluated without cancellation.
double multiplexed_heralding_probability(double p_single, int n_sources);

// Metrics of the whole system. The heralded state of whichever source fires
// is routed through the switch tree; its post-loss form is the delivered
// state.
SystemMetrics multiplexed_metrics(const MultiplexConfig& config);

// State leaving the switch tree given a successful herald, or nullopt when
// no source can herald.
std::optional<PhotonNumberDistribution> delivered_state(const MultiplexConfig& config);

// Mean time for n_photons independent systems to succeed in the same pulse:
// 1 / (rep_rate * p_success^n_photons). Infinite when p_success is zero.
double waiting_time(double p_success, double rep_rate, int n_photons);

}  // namespace muxsim
