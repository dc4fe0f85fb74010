#include "muxsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "muxsim/errors.hpp"
#include "muxsim/fock.hpp"

namespace muxsim {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct Counts {
    std::int64_t heralds = 0;
    std::int64_t heralded_single = 0;
    std::int64_t heralded_multi = 0;
    std::int64_t delivered_single = 0;
    std::int64_t delivered_multi = 0;
    std::int64_t clamped_draws = 0;

    void add(const TrialOutcome& outcome) {
        clamped_draws += outcome.clamped_draws;
        if (!outcome.heralded) return;
        ++heralds;
        if (outcome.idler_photons == 1) ++heralded_single;
        if (outcome.idler_photons >= 2) ++heralded_multi;
        if (outcome.delivered_photons == 1) ++delivered_single;
        if (outcome.delivered_photons >= 2) ++delivered_multi;
    }

    void merge(const Counts& other) {
        heralds += other.heralds;
        heralded_single += other.heralded_single;
        heralded_multi += other.heralded_multi;
        delivered_single += other.delivered_single;
        delivered_multi += other.delivered_multi;
        clamped_draws += other.clamped_draws;
    }
};

Counts run_range(const SystemSampler& sampler, std::uint64_t seed, std::int64_t begin, std::int64_t end) {
    Counts counts;
    TrialOutcome outcome;
    std::vector<std::uint8_t> bins;
    for (std::int64_t trial = begin; trial < end; ++trial) {
        sampler.run_trial_into(seed, static_cast<std::uint64_t>(trial), outcome, bins);
        counts.add(outcome);
    }
    return counts;
}

EmpiricalEstimate proportion(std::int64_t hits, std::int64_t total) {
    if (total == 0) return {};
    const double p = static_cast<double>(hits) / static_cast<double>(total);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(total))};
}

EmpiricalEstimate count_ratio(std::int64_t single, std::int64_t multi) {
    if (multi == 0) return {std::numeric_limits<double>::infinity(), 0.0};
    const double ratio = static_cast<double>(single) / static_cast<double>(multi);
    if (single == 0) return {0.0, 0.0};
    return {ratio, ratio * std::sqrt(1.0 / static_cast<double>(single) + 1.0 / static_cast<double>(multi))};
}

MetricCheck check_proportion(std::string name, double analytic, const EmpiricalEstimate& empirical,
                             std::int64_t samples, double sigmas) {
    MetricCheck check{std::move(name), analytic, empirical.value, 0.0, true, true};
    if (samples > 0) check.std_error = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(samples));
    check.pass = std::abs(empirical.value - analytic) <= sigmas * check.std_error + 1e-12;
    return check;
}

MetricCheck check_ratio(std::string name, double analytic, const EmpiricalEstimate& empirical, std::int64_t single,
                        std::int64_t multi, double sigmas) {
    MetricCheck check{std::move(name), analytic, empirical.value, empirical.std_error, true, true};
    if (std::isinf(analytic)) {
        check.pass = std::isinf(empirical.value);
        return check;
    }
    // Delta-method errors need a handful of counts on both sides.
    constexpr std::int64_t kMinCounts = 10;
    if (single < kMinCounts || multi < kMinCounts) {
        check.checked = false;
        return check;
    }
    check.pass = std::abs(empirical.value - analytic) <= sigmas * check.std_error;
    return check;
}

}  // namespace

SplitMix64::result_type SplitMix64::operator()() {
    state_ += kGolden;
    return mix64(state_);
}

double SplitMix64::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) { return SplitMix64(mix64(mix64(seed) + trial)); }

SystemSampler::SystemSampler(const MultiplexConfig& config) : config_(config) {
    config_.validate();
    pair_cap_ = choose_cutoff(config_.nbar).n_max;
    log_ratio_ = std::log(config_.nbar / (config_.nbar + 1.0));
    transmission_ = config_.loss_budget().total;
}

TrialOutcome SystemSampler::run_trial(std::uint64_t seed, std::uint64_t trial) const {
    TrialOutcome outcome;
    std::vector<std::uint8_t> bins;
    run_trial_into(seed, trial, outcome, bins);
    return outcome;
}

void SystemSampler::run_trial_into(std::uint64_t seed, std::uint64_t trial, TrialOutcome& out,
                                   std::vector<std::uint8_t>& bins) const {
    SplitMix64 rng = trial_stream(seed, trial);
    const DetectorModel& detector = config_.detector;
    const double eta_d = detector.efficiency();
    const int success = success_outcome(detector);
    const int modes = detector.modes().value_or(0);
    if (detector.kind() == DetectorKind::pseudo_pnr) bins.assign(static_cast<std::size_t>(modes), 0);

    out.heralded = false;
    out.selected_source.reset();
    out.idler_photons = 0;
    out.delivered_photons = 0;
    out.clamped_draws = 0;
    out.detector_outcomes.assign(static_cast<std::size_t>(config_.n_sources), 0);

    int selected_pairs = 0;
    for (int source = 0; source < config_.n_sources; ++source) {
        // Inverse CDF of the thermal law: P(N >= n) = ratio^n.
        int pairs = 0;
        if (config_.nbar > 0.0) {
            const double u = 1.0 - rng.uniform();  // (0, 1]
            const double draw = std::floor(std::log(u) / log_ratio_);
            if (draw > pair_cap_) {
                pairs = pair_cap_;
                ++out.clamped_draws;
            } else {
                pairs = static_cast<int>(draw);
            }
        }

        int outcome = 0;
        if (detector.kind() == DetectorKind::pseudo_pnr) {
            for (int photon = 0; photon < pairs; ++photon) {
                if (rng.uniform() >= eta_d) continue;
                const auto bin = std::min(static_cast<std::size_t>(rng.uniform() * modes),
                                          static_cast<std::size_t>(modes - 1));
                if (bins[bin] == 0) {
                    bins[bin] = 1;
                    ++outcome;
                }
            }
            if (outcome > 0) std::fill(bins.begin(), bins.end(), 0);
        } else {
            for (int photon = 0; photon < pairs; ++photon) {
                if (rng.uniform() < eta_d) ++outcome;
            }
            if (detector.kind() == DetectorKind::binary) outcome = outcome > 0 ? 1 : 0;
        }
        out.detector_outcomes[static_cast<std::size_t>(source)] = outcome;

        if (outcome == success && !out.heralded) {
            out.heralded = true;
            out.selected_source = source;
            selected_pairs = pairs;
        }
    }

    if (!out.heralded) return;
    out.idler_photons = selected_pairs;
    for (int photon = 0; photon < selected_pairs; ++photon) {
        if (rng.uniform() < transmission_) ++out.delivered_photons;
    }
}

EmpiricalMetrics simulate_system(const MultiplexConfig& config, std::int64_t trials, std::uint64_t seed,
                                 int threads) {
    if (trials < 1) throw DomainError("need at least one trial");
    const SystemSampler sampler(config);

    const int shards = static_cast<int>(std::clamp<std::int64_t>(threads, 1, trials));
    std::vector<Counts> partial(static_cast<std::size_t>(shards));
    if (shards == 1) {
        partial[0] = run_range(sampler, seed, 0, trials);
    } else {
        std::vector<std::thread> workers;
        for (int shard = 0; shard < shards; ++shard) {
            const std::int64_t begin = trials * shard / shards;
            const std::int64_t end = trials * (shard + 1) / shards;
            workers.emplace_back(
                [&, shard, begin, end] { partial[static_cast<std::size_t>(shard)] = run_range(sampler, seed, begin, end); });
        }
        for (auto& worker : workers) worker.join();
    }
    Counts counts;
    for (const Counts& c : partial) counts.merge(c);

    EmpiricalMetrics metrics;
    metrics.trials = trials;
    metrics.heralds = counts.heralds;
    metrics.heralded_single = counts.heralded_single;
    metrics.heralded_multi = counts.heralded_multi;
    metrics.delivered_single = counts.delivered_single;
    metrics.delivered_multi = counts.delivered_multi;
    metrics.clamped_draws = counts.clamped_draws;
    metrics.p_heralding = proportion(counts.heralds, trials);
    metrics.fidelity = proportion(counts.delivered_single, counts.heralds);
    metrics.p_success = proportion(counts.delivered_single, trials);
    metrics.snr = count_ratio(counts.heralded_single, counts.heralded_multi);
    metrics.delivered_snr = count_ratio(counts.delivered_single, counts.delivered_multi);
    return metrics;
}

std::vector<MetricCheck> compare_with_analytic(const SystemMetrics& analytic, const EmpiricalMetrics& empirical,
                                               double sigmas) {
    return {
        check_proportion("p_heralding", analytic.p_heralding, empirical.p_heralding, empirical.trials, sigmas),
        check_proportion("fidelity", analytic.fidelity, empirical.fidelity, empirical.heralds, sigmas),
        check_proportion("p_success", analytic.p_success, empirical.p_success, empirical.trials, sigmas),
        check_ratio("snr", analytic.snr, empirical.snr, empirical.heralded_single, empirical.heralded_multi, sigmas),
        check_ratio("delivered_snr", analytic.delivered_snr, empirical.delivered_snr, empirical.delivered_single,
                    empirical.delivered_multi, sigmas),
    };
}

}  // namespace muxsim
