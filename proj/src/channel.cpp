#include "muxsim/channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "muxsim/errors.hpp"

namespace muxsim {

namespace {

void check_unit_interval(double value, const char* what) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(value));
    }
}

}  // namespace

PhotonNumberDistribution apply_loss(const PhotonNumberDistribution& dist, double transmission) {
    check_unit_interval(transmission, "transmission");
    const int n_max = dist.n_max();
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        const double weight = dist[n];
        if (weight == 0.0) continue;
        for (int k = 0; k <= n; ++k) {
            out[static_cast<std::size_t>(k)] +=
                binomial(n, k) * std::pow(transmission, k) * std::pow(1.0 - transmission, n - k) * weight;
        }
    }
    // Rounding can push the summed mass a few ulp above the input's.
    for (double& p : out) p = std::min(p, 1.0);
    return PhotonNumberDistribution(std::move(out));
}

LossBudget network_efficiency(int n_sources, double switch_efficiency, double delay_efficiency) {
    if (n_sources < 1) throw DomainError("a multiplexed system needs at least one source");
    check_unit_interval(switch_efficiency, "switch efficiency");
    check_unit_interval(delay_efficiency, "delay efficiency");
    if (n_sources == 1) return {1.0, switch_efficiency, 0, 1.0};

    const int stages = std::bit_width(static_cast<unsigned>(n_sources - 1));
    return {delay_efficiency, switch_efficiency, stages, delay_efficiency * std::pow(switch_efficiency, stages)};
}

}  // namespace muxsim
