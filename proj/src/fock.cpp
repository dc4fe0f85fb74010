#include "muxsim/fock.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "muxsim/errors.hpp"

namespace muxsim {

namespace {

using PascalTable = std::array<std::array<double, kMaxCutoff + 1>, kMaxCutoff + 1>;

const PascalTable& pascal_table() {
    static const PascalTable table = [] {
        PascalTable t{};
        for (int n = 0; n <= kMaxCutoff; ++n) {
            t[n][0] = 1.0;
            for (int k = 1; k <= n; ++k) {
                t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0.0);
            }
        }
        return t;
    }();
    return table;
}

void check_cutoff(int n_max) {
    if (n_max < 0 || n_max > kMaxCutoff) {
        throw DomainError("photon-number cutoff must lie in [0, " + std::to_string(kMaxCutoff) +
                          "], got " + std::to_string(n_max));
    }
}

}  // namespace

PhotonNumberDistribution::PhotonNumberDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw DomainError("photon-number distribution needs at least the vacuum entry");
    }
    check_cutoff(n_max());
    for (double p : probs_) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw DomainError("photon-number probability outside [0, 1]: " + std::to_string(p));
        }
    }
    if (total() > 1.0 + 1e-12) {
        throw DomainError("photon-number distribution sums to more than one: " + std::to_string(total()));
    }
}

PhotonNumberDistribution PhotonNumberDistribution::vacuum(int n_max) { return fock(0, n_max); }

PhotonNumberDistribution PhotonNumberDistribution::fock(int photons, int n_max) {
    check_cutoff(n_max);
    if (photons < 0 || photons > n_max) {
        throw DomainError("Fock state photon number outside [0, n_max]");
    }
    std::vector<double> probs(static_cast<std::size_t>(n_max) + 1, 0.0);
    probs[static_cast<std::size_t>(photons)] = 1.0;
    return PhotonNumberDistribution(std::move(probs));
}

double PhotonNumberDistribution::operator[](int n) const {
    if (n < 0 || n > n_max()) return 0.0;
    return probs_[static_cast<std::size_t>(n)];
}

double PhotonNumberDistribution::total() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

PhotonNumberDistribution thermal_distribution(double nbar, int n_max) {
    if (!std::isfinite(nbar) || nbar < 0.0) {
        throw DomainError("mean photon number must be finite and non-negative");
    }
    check_cutoff(n_max);
    const double ratio = nbar / (nbar + 1.0);
    const double vacuum = 1.0 / (nbar + 1.0);
    std::vector<double> probs(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        probs[static_cast<std::size_t>(n)] = vacuum * std::pow(ratio, n);
    }
    return PhotonNumberDistribution(std::move(probs));
}

Cutoff choose_cutoff(double nbar, double tail_tol) {
    if (!std::isfinite(nbar) || nbar < 0.0) {
        throw DomainError("mean photon number must be finite and non-negative");
    }
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw DomainError("tail tolerance must lie in (0, 1)");
    }
    const double ratio = nbar / (nbar + 1.0);
    for (int n = 0; n <= kMaxCutoff; ++n) {
        if (std::pow(ratio, n + 1) <= tail_tol) return {n, false};
    }
    return {kMaxCutoff, true};
}

double mean_photon_number(const PhotonNumberDistribution& dist) {
    double mean = 0.0;
    for (int n = 1; n <= dist.n_max(); ++n) mean += n * dist[n];
    return mean;
}

double binomial(int n, int k) {
    if (n < 0 || n > kMaxCutoff) throw DomainError("binomial order outside the tabulated range");
    if (k < 0 || k > n) return 0.0;
    return pascal_table()[n][k];
}

}  // namespace muxsim
