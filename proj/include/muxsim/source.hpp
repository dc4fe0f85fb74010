#pragma once

#include <optional>
#include <vector>

#include "muxsim/detectors.hpp"
#include "muxsim/fock.hpp"

namespace muxsim {

// Outcome statistics of the heralding detector together with the idler
// state each outcome leaves behind.
//
// outcome_probs is the heralding probability vector p_H. conditionals[m] is
// the normalized idler distribution given outcome m, or nullopt when the
// outcome has (numerically) zero probability.
struct HeraldedEnsemble {
    std::vector<double> outcome_probs;
    std::vector<std::optional<PhotonNumberDistribution>> conditionals;
};

// Per-pulse figures of merit of a (possibly multiplexed) source.
//
// snr is taken on the heralded idler state before any routing loss; it is
// the quantity held fixed when comparing systems. delivered_snr applies the
// same ratio to the state leaving the switch network. Both coincide for a
// single source. When nothing can herald (p_heralding == 0) the heralded
// state is undefined and fidelity, snr and delivered_snr are reported as 0.
struct SystemMetrics {
    double nbar = 0.0;
    double p_heralding = 0.0;
    double fidelity = 0.0;
    double snr = 0.0;
    double delivered_snr = 0.0;
    double p_success = 0.0;
};

// Signal and idler photon numbers are perfectly correlated, so detecting the
// signal arm conditions the idler diagonal directly.
HeraldedEnsemble herald_ensemble(const PhotonNumberDistribution& pairs, const PovmTable& povm);

// Outcome index that counts as a successful herald: one photon (PNR), one
// bin (pseudo-PNR) or a click (binary). It is 1 for every detector kind.
int success_outcome(const DetectorModel& detector);

// P(1) / sum_{n >= 2} P(n); +infinity when there is no multi-photon weight.
double snr_of(const PhotonNumberDistribution& delivered);

// True when snr_of returned infinity only because the state carries no
// single-photon weight either (vacuum only).
bool snr_degenerate(const PhotonNumberDistribution& delivered);

// Overlap with the one-photon Fock state, <1|rho|1> / Tr(rho).
double fidelity_of(const PhotonNumberDistribution& delivered);

// One source pumped at `nbar`, with the heralded state it yields on success.
struct HeraldedSource {
    PhotonNumberDistribution pairs;
    HeraldedEnsemble ensemble;
    int success_index = 1;

    double success_probability() const;
    const std::optional<PhotonNumberDistribution>& heralded_state() const;
};

// Cutoff is choose_cutoff(nbar, tail_tol).
HeraldedSource prepare_source(double nbar, const DetectorModel& detector,
                              double tail_tol = kDefaultTailTolerance);

SystemMetrics single_source_metrics(double nbar, const DetectorModel& detector);

}  // namespace muxsim
