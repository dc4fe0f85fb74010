#include "muxsim/detectors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "muxsim/errors.hpp"
#include "muxsim/fock.hpp"

namespace muxsim {

namespace {

void check_efficiency(double efficiency) {
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
        throw DomainError("detector efficiency must lie in [0, 1], got " + std::to_string(efficiency));
    }
}

void check_n_max(int n_max) {
    if (n_max < 0 || n_max > kMaxCutoff) throw DomainError("photon-number cutoff out of range");
}

std::size_t cell(int outcome, int photons, int n_max) {
    return static_cast<std::size_t>(outcome) * static_cast<std::size_t>(n_max + 1) + static_cast<std::size_t>(photons);
}

}  // namespace

DetectorModel::DetectorModel(DetectorKind kind, std::optional<int> modes, double efficiency)
    : kind_(kind), modes_(modes), efficiency_(efficiency) {
    check_efficiency(efficiency);
    if (kind == DetectorKind::pseudo_pnr) {
        if (!modes || *modes < 1) throw DomainError("pseudo-PNR detector needs at least one mode");
    } else if (modes) {
        throw DomainError("only pseudo-PNR detectors carry a mode count");
    }
}

DetectorModel DetectorModel::binary(double efficiency) { return {DetectorKind::binary, std::nullopt, efficiency}; }

DetectorModel DetectorModel::pnr(double efficiency) { return {DetectorKind::pnr, std::nullopt, efficiency}; }

DetectorModel DetectorModel::pseudo_pnr(int modes, double efficiency) {
    return {DetectorKind::pseudo_pnr, modes, efficiency};
}

DetectorModel DetectorModel::parse(std::string_view descriptor, double efficiency) {
    if (descriptor == "binary") return binary(efficiency);
    if (descriptor == "pnr") return pnr(efficiency);
    for (std::string_view prefix : {"pseudo-pnr:", "pseudo:"}) {
        if (descriptor.starts_with(prefix)) {
            const std::string_view digits = descriptor.substr(prefix.size());
            int modes = 0;
            const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), modes);
            if (ec != std::errc{} || end != digits.data() + digits.size()) {
                throw DomainError("bad pseudo-PNR mode count in '" + std::string(descriptor) + "'");
            }
            return pseudo_pnr(modes, efficiency);
        }
    }
    throw DomainError("unknown detector '" + std::string(descriptor) + "' (expected binary, pnr or pseudo-pnr:M)");
}

std::string DetectorModel::label() const {
    switch (kind_) {
        case DetectorKind::binary:
            return "binary";
        case DetectorKind::pnr:
            return "pnr";
        case DetectorKind::pseudo_pnr:
            return "pseudo-pnr:" + std::to_string(*modes_);
    }
    return {};
}

PovmTable::PovmTable(DetectorKind kind, int outcomes, int n_max, std::vector<double> entries)
    : kind_(kind), outcomes_(outcomes), n_max_(n_max), entries_(std::move(entries)) {
    if (outcomes < 1 || n_max < 0 ||
        entries_.size() != static_cast<std::size_t>(outcomes) * static_cast<std::size_t>(n_max + 1)) {
        throw StructuralError("POVM table dimensions do not match its entries");
    }
    for (double& p : entries_) {
        if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) {
            throw ConsistencyError("POVM entry outside [0, 1]: " + std::to_string(p));
        }
        p = std::clamp(p, 0.0, 1.0);
    }
    for (int photons = 0; photons <= n_max; ++photons) {
        double column = 0.0;
        for (int k = 0; k < outcomes; ++k) {
            const double p = (*this)(k, photons);
            column += p;
            if (k > photons && p > 1e-12) {
                throw ConsistencyError("POVM registers more than the incident photon number");
            }
        }
        if (std::abs(column - 1.0) > 1e-10) {
            throw ConsistencyError("POVM column " + std::to_string(photons) + " sums to " + std::to_string(column));
        }
    }
}

std::span<const double> PovmTable::row(int outcome) const {
    return std::span<const double>(entries_).subspan(cell(outcome, 0, n_max_), static_cast<std::size_t>(n_max_ + 1));
}

std::string PovmTable::outcome_label(int outcome) const {
    switch (kind_) {
        case DetectorKind::binary:
            return outcome == 0 ? "no-click" : "click";
        case DetectorKind::pnr:
            return std::to_string(outcome) + " photons";
        case DetectorKind::pseudo_pnr:
            return std::to_string(outcome) + " bins";
    }
    return {};
}

PovmTable binary_povm(double efficiency, int n_max) {
    check_efficiency(efficiency);
    check_n_max(n_max);
    std::vector<double> entries(2 * static_cast<std::size_t>(n_max + 1));
    for (int photons = 0; photons <= n_max; ++photons) {
        const double dark = std::pow(1.0 - efficiency, photons);
        entries[cell(0, photons, n_max)] = dark;
        entries[cell(1, photons, n_max)] = 1.0 - dark;
    }
    return PovmTable(DetectorKind::binary, 2, n_max, std::move(entries));
}

PovmTable pnr_povm(double efficiency, int n_max) {
    check_efficiency(efficiency);
    check_n_max(n_max);
    const int outcomes = n_max + 1;
    std::vector<double> entries(static_cast<std::size_t>(outcomes) * static_cast<std::size_t>(n_max + 1), 0.0);
    for (int photons = 0; photons <= n_max; ++photons) {
        for (int k = 0; k <= photons; ++k) {
            entries[cell(k, photons, n_max)] =
                binomial(photons, k) * std::pow(efficiency, k) * std::pow(1.0 - efficiency, photons - k);
        }
    }
    return PovmTable(DetectorKind::pnr, outcomes, n_max, std::move(entries));
}

PovmTable pseudo_pnr_povm(double efficiency, int modes, int n_max) {
    check_efficiency(efficiency);
    check_n_max(n_max);
    if (modes < 1) throw DomainError("pseudo-PNR detector needs at least one mode");

    // occupancy[k] = P(k bins lit | photons seen so far). Each photon is
    // lost with probability 1 - eta, otherwise lands uniformly in one of the
    // M bins and lights a new one with probability (M - k) / M.
    const int max_clicks = std::min(modes, n_max);
    const int outcomes = max_clicks + 1;
    const double m = modes;
    std::vector<double> entries(static_cast<std::size_t>(outcomes) * static_cast<std::size_t>(n_max + 1), 0.0);
    std::vector<double> occupancy(static_cast<std::size_t>(outcomes), 0.0);
    occupancy[0] = 1.0;
    for (int photons = 0; photons <= n_max; ++photons) {
        if (photons > 0) {
            for (int k = std::min(photons, max_clicks); k >= 0; --k) {
                const double stay = (1.0 - efficiency) + efficiency * (k / m);
                const double grow = k > 0 ? efficiency * ((m - (k - 1)) / m) : 0.0;
                occupancy[k] = occupancy[k] * stay + (k > 0 ? occupancy[k - 1] * grow : 0.0);
            }
        }
        for (int k = 0; k < outcomes; ++k) entries[cell(k, photons, n_max)] = occupancy[k];
    }
    return PovmTable(DetectorKind::pseudo_pnr, outcomes, n_max, std::move(entries));
}

PovmTable make_povm(const DetectorModel& detector, int n_max) {
    switch (detector.kind()) {
        case DetectorKind::binary:
            return binary_povm(detector.efficiency(), n_max);
        case DetectorKind::pnr:
            return pnr_povm(detector.efficiency(), n_max);
        case DetectorKind::pseudo_pnr:
            return pseudo_pnr_povm(detector.efficiency(), *detector.modes(), n_max);
    }
    throw DomainError("unknown detector kind");
}

double pseudo_pnr_probability_direct(double efficiency, int modes, int clicks, int photons) {
    check_efficiency(efficiency);
    if (modes < 1) throw DomainError("pseudo-PNR detector needs at least one mode");
    if (clicks < 0 || photons < 0) throw DomainError("negative count");
    if (clicks > modes || clicks > photons) return 0.0;

    double modes_choose_clicks = 1.0;
    for (int i = 0; i < clicks; ++i) modes_choose_clicks = modes_choose_clicks * (modes - i) / (i + 1);

    double sum = 0.0;
    double clicks_choose_j = 1.0;
    for (int j = 0; j <= clicks; ++j) {
        const double base = (1.0 - efficiency) + efficiency * (clicks - j) / modes;
        sum += (j % 2 == 0 ? 1.0 : -1.0) * clicks_choose_j * std::pow(base, photons);
        clicks_choose_j = clicks_choose_j * (clicks - j) / (j + 1);
    }
    return modes_choose_clicks * sum;
}

}  // namespace muxsim
