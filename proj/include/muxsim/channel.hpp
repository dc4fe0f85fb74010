#pragma once

#include "muxsim/fock.hpp"

namespace muxsim {

// Transmission from generation to the output of a switch tree.
// total = delay_efficiency * switch_efficiency^switch_stages.
struct LossBudget {
    double delay_efficiency = 1.0;
    double switch_efficiency = 1.0;
    int switch_stages = 0;
    double total = 1.0;
};

// Binomial thinning: each photon survives independently with probability
// `transmission`. This is the diagonal of a beam splitter with T = sqrt(eta)
// after tracing out the reflected port. Output keeps the input cutoff.
PhotonNumberDistribution apply_loss(const PhotonNumberDistribution& dist, double transmission);

// Balanced tree of 2-to-1 switches: ceil(log2(n_sources)) stages plus one
// delay line. A single source is unswitched and undelayed (total = 1).
LossBudget network_efficiency(int n_sources, double switch_efficiency, double delay_efficiency);

}  // namespace muxsim
