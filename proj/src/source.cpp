#include "muxsim/source.hpp"

#include <limits>

#include "muxsim/errors.hpp"

namespace muxsim {

namespace {

constexpr double kNegligible = 1e-300;

double multi_photon_weight(const PhotonNumberDistribution& dist) {
    double multi = 0.0;
    for (int n = 2; n <= dist.n_max(); ++n) multi += dist[n];
    return multi;
}

}  // namespace

HeraldedEnsemble herald_ensemble(const PhotonNumberDistribution& pairs, const PovmTable& povm) {
    if (povm.n_max() < pairs.n_max()) {
        throw StructuralError("POVM table does not cover the pair distribution cutoff");
    }
    const int n_max = pairs.n_max();
    HeraldedEnsemble ensemble;
    ensemble.outcome_probs.resize(static_cast<std::size_t>(povm.outcome_count()), 0.0);
    ensemble.conditionals.resize(static_cast<std::size_t>(povm.outcome_count()));

    std::vector<double> joint(static_cast<std::size_t>(n_max) + 1);
    for (int m = 0; m < povm.outcome_count(); ++m) {
        double p_outcome = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            joint[static_cast<std::size_t>(n)] = povm(m, n) * pairs[n];
            p_outcome += joint[static_cast<std::size_t>(n)];
        }
        ensemble.outcome_probs[static_cast<std::size_t>(m)] = p_outcome;
        if (p_outcome > kNegligible) {
            std::vector<double> conditional(joint);
            for (double& p : conditional) p /= p_outcome;
            ensemble.conditionals[static_cast<std::size_t>(m)].emplace(std::move(conditional));
        }
    }
    return ensemble;
}

int success_outcome(const DetectorModel& /*detector*/) { return 1; }

double snr_of(const PhotonNumberDistribution& delivered) {
    const double multi = multi_photon_weight(delivered);
    if (multi <= kNegligible) return std::numeric_limits<double>::infinity();
    return delivered[1] / multi;
}

bool snr_degenerate(const PhotonNumberDistribution& delivered) {
    return multi_photon_weight(delivered) <= kNegligible && delivered[1] == 0.0;
}

double fidelity_of(const PhotonNumberDistribution& delivered) {
    const double trace = delivered.total();
    if (trace <= 0.0) return 0.0;
    return delivered[1] / trace;
}

double HeraldedSource::success_probability() const {
    return ensemble.outcome_probs[static_cast<std::size_t>(success_index)];
}

const std::optional<PhotonNumberDistribution>& HeraldedSource::heralded_state() const {
    return ensemble.conditionals[static_cast<std::size_t>(success_index)];
}

HeraldedSource prepare_source(double nbar, const DetectorModel& detector, double tail_tol) {
    const Cutoff cutoff = choose_cutoff(nbar, tail_tol);
    PhotonNumberDistribution pairs = thermal_distribution(nbar, cutoff.n_max);
    const PovmTable povm = make_povm(detector, cutoff.n_max);
    HeraldedEnsemble ensemble = herald_ensemble(pairs, povm);
    const int success = success_outcome(detector);
    if (success >= povm.outcome_count()) {
        // Only possible at n_max = 0 (nbar = 0), where no outcome beyond
        // "nothing" exists; pad so the success slot reads as impossible.
        ensemble.outcome_probs.resize(static_cast<std::size_t>(success) + 1, 0.0);
        ensemble.conditionals.resize(static_cast<std::size_t>(success) + 1);
    }
    return {std::move(pairs), std::move(ensemble), success};
}

SystemMetrics single_source_metrics(double nbar, const DetectorModel& detector) {
    const HeraldedSource source = prepare_source(nbar, detector);
    SystemMetrics metrics;
    metrics.nbar = nbar;
    metrics.p_heralding = source.success_probability();
    if (const auto& state = source.heralded_state()) {
        metrics.fidelity = fidelity_of(*state);
        metrics.snr = snr_of(*state);
        metrics.delivered_snr = metrics.snr;
    }
    metrics.p_success = metrics.p_heralding * metrics.fidelity;
    return metrics;
}

}  // namespace muxsim
