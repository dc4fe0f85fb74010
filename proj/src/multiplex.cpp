#include "muxsim/multiplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "muxsim/errors.hpp"

namespace muxsim {

double MultiplexConfig::effective_rep_rate() const {
    if (rep_rate) return *rep_rate;
    return n_sources > 1 ? kMultiplexedRepRate : kSingleSourceRepRate;
}

LossBudget MultiplexConfig::loss_budget() const {
    return network_efficiency(n_sources, switch_efficiency, delay_efficiency);
}

MultiplexConfig MultiplexConfig::with_nbar(double value) const {
    MultiplexConfig copy = *this;
    copy.nbar = value;
    return copy;
}

void MultiplexConfig::validate() const {
    if (n_sources < 1) throw DomainError("n_sources must be at least 1");
    if (!(switch_efficiency >= 0.0 && switch_efficiency <= 1.0)) {
        throw DomainError("switch efficiency must lie in [0, 1]");
    }
    if (!(delay_efficiency >= 0.0 && delay_efficiency <= 1.0)) {
        throw DomainError("delay efficiency must lie in [0, 1]");
    }
    if (rep_rate && !(*rep_rate > 0.0 && std::isfinite(*rep_rate))) {
        throw DomainError("repetition rate must be positive");
    }
    if (!std::isfinite(nbar) || nbar < 0.0) throw DomainError("mean photon number must be finite and non-negative");
}

TwoSourceCombination combine_two(std::span<const double> p_h_a, std::span<const double> p_h_b, int success_index) {
    for (auto p_h : {p_h_a, p_h_b}) {
        const double sum = std::accumulate(p_h.begin(), p_h.end(), 0.0);
        if (std::abs(sum - 1.0) > 1e-10) {
            throw StructuralError("heralding probability vector sums to " + std::to_string(sum));
        }
    }
    if (success_index < 0 || static_cast<std::size_t>(success_index) >= p_h_a.size() ||
        static_cast<std::size_t>(success_index) >= p_h_b.size()) {
        throw StructuralError("success outcome outside the heralding probability vectors");
    }

    const auto s = static_cast<std::size_t>(success_index);
    TwoSourceCombination result;
    result.joint.assign(p_h_a.size(), std::vector<double>(p_h_b.size(), 0.0));
    for (std::size_t i = 0; i < p_h_a.size(); ++i) {
        for (std::size_t j = 0; j < p_h_b.size(); ++j) {
            const double p = p_h_a[i] * p_h_b[j];
            result.joint[i][j] = p;
            if (i == s || j == s) result.p_success_any += p;
        }
    }
    result.p_none = 1.0 - result.p_success_any;
    return result;
}

std::vector<double> collapse(const TwoSourceCombination& combination, int success_index) {
    const auto s = static_cast<std::size_t>(success_index);
    std::vector<double> p_h(std::max<std::size_t>(2, s + 1), 0.0);
    p_h[s] = combination.p_success_any;
    p_h[s == 0 ? 1 : 0] = combination.p_none;
    return p_h;
}

double cascaded_heralding_probability(std::span<const double> p_h, int success_index, int n_sources) {
    if (n_sources < 1) throw DomainError("n_sources must be at least 1");
    std::vector<std::vector<double>> level(static_cast<std::size_t>(n_sources),
                                           std::vector<double>(p_h.begin(), p_h.end()));
    while (level.size() > 1) {
        std::vector<std::vector<double>> next;
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            next.push_back(collapse(combine_two(level[i], level[i + 1], success_index), success_index));
        }
        if (level.size() % 2 == 1) next.push_back(level.back());
        level = std::move(next);
    }
    return level.front().at(static_cast<std::size_t>(success_index));
}

double multiplexed_heralding_probability(double p_single, int n_sources) {
    if (!(p_single >= 0.0 && p_single <= 1.0)) throw DomainError("heralding probability must lie in [0, 1]");
    if (n_sources < 1) throw DomainError("n_sources must be at least 1");
    if (n_sources == 1) return p_single;
    return -std::expm1(n_sources * std::log1p(-p_single));
}

std::optional<PhotonNumberDistribution> delivered_state(const MultiplexConfig& config) {
    config.validate();
    const HeraldedSource source = prepare_source(config.nbar, config.detector);
    if (!source.heralded_state()) return std::nullopt;
    return apply_loss(*source.heralded_state(), config.loss_budget().total);
}

SystemMetrics multiplexed_metrics(const MultiplexConfig& config) {
    config.validate();
    const HeraldedSource source = prepare_source(config.nbar, config.detector);
    const LossBudget budget = config.loss_budget();

    SystemMetrics metrics;
    metrics.nbar = config.nbar;
    metrics.p_heralding = multiplexed_heralding_probability(source.success_probability(), config.n_sources);
    if (const auto& heralded = source.heralded_state()) {
        const PhotonNumberDistribution delivered = apply_loss(*heralded, budget.total);
        metrics.fidelity = fidelity_of(delivered);
        metrics.snr = snr_of(*heralded);
        metrics.delivered_snr = snr_of(delivered);
    }
    metrics.p_success = metrics.p_heralding * metrics.fidelity;
    return metrics;
}

double waiting_time(double p_success, double rep_rate, int n_photons) {
    if (!(p_success >= 0.0 && p_success <= 1.0)) throw DomainError("success probability must lie in [0, 1]");
    if (!(rep_rate > 0.0 && std::isfinite(rep_rate))) throw DomainError("repetition rate must be positive");
    if (n_photons < 1) throw DomainError("need at least one photon");
    if (p_success == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (rep_rate * std::pow(p_success, n_photons));
}

}  // namespace muxsim
