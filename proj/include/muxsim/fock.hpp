#pragma once

#include <span>
#include <vector>

namespace muxsim {

// Largest photon-number cutoff supported. Binomial coefficients up to this
// order are tabulated in double precision.
inline constexpr int kMaxCutoff = 200;
inline constexpr double kDefaultTailTolerance = 1e-12;

// Photon-number diagonal of a single-mode state, truncated at n_max.
//
// Every operator in the model (detector POVMs, loss) is diagonal in the Fock
// basis, so a state is fully described by its probabilities p[n]. The sum may
// fall short of one by the truncated tail.
class PhotonNumberDistribution {
  public:
    // Validates: non-empty, n_max <= kMaxCutoff, entries in [0, 1] and
    // sum <= 1 + 1e-12. Throws DomainError otherwise.
    explicit PhotonNumberDistribution(std::vector<double> probs);

    static PhotonNumberDistribution vacuum(int n_max);
    static PhotonNumberDistribution fock(int photons, int n_max);

    int n_max() const { return static_cast<int>(probs_.size()) - 1; }

    // Probability of n photons; zero above the cutoff.
    double operator[](int n) const;

    std::span<const double> probs() const { return probs_; }
    double total() const;

  private:
    std::vector<double> probs_;
};

struct Cutoff {
    int n_max = 0;
    // True when the tail tolerance could not be met below kMaxCutoff.
    bool saturated = false;
};

// Thermal pair statistics p(n) = nbar^n / (nbar + 1)^(n + 1), n = 0..n_max.
PhotonNumberDistribution thermal_distribution(double nbar, int n_max);

// Smallest n_max whose truncated thermal tail (nbar / (nbar + 1))^(n_max + 1)
// is at most tail_tol, capped at kMaxCutoff.
Cutoff choose_cutoff(double nbar, double tail_tol = kDefaultTailTolerance);

double mean_photon_number(const PhotonNumberDistribution& dist);

// C(n, k) from a Pascal triangle, 0 <= k <= n <= kMaxCutoff; zero for k > n.
double binomial(int n, int k);

}  // namespace muxsim
