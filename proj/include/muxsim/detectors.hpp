#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace muxsim {

enum class DetectorKind { binary, pnr, pseudo_pnr };

// Heralding detector with a single lumped efficiency covering all loss in
// the signal arm. Pseudo-PNR detectors split their input evenly over
// `modes` bins, each watched by a binary detector.
class DetectorModel {
  public:
    static DetectorModel binary(double efficiency);
    static DetectorModel pnr(double efficiency);
    static DetectorModel pseudo_pnr(int modes, double efficiency);

    // "binary", "pnr" or "pseudo-pnr:<M>" (also accepts "pseudo:<M>").
    static DetectorModel parse(std::string_view descriptor, double efficiency);

    DetectorKind kind() const { return kind_; }
    std::optional<int> modes() const { return modes_; }
    double efficiency() const { return efficiency_; }

    // Inverse of parse: "binary", "pnr", "pseudo-pnr:8".
    std::string label() const;

    bool operator==(const DetectorModel&) const = default;

  private:
    DetectorModel(DetectorKind kind, std::optional<int> modes, double efficiency);

    DetectorKind kind_;
    std::optional<int> modes_;
    double efficiency_;
};

// Conditional detection probabilities p(outcome | N photons), outcome-major.
//
// Binary: outcome 0 = no click, 1 = click. PNR: outcome k = k photons
// registered. Pseudo-PNR: outcome k = k bins clicked.
class PovmTable {
  public:
    // Checks entries lie in [0, 1] (within 1e-12, then clamped),
    // completeness per column within 1e-10 and p(k | N) = 0 for k > N.
    // Throws ConsistencyError on violation.
    PovmTable(DetectorKind kind, int outcomes, int n_max, std::vector<double> entries);

    DetectorKind kind() const { return kind_; }
    int outcome_count() const { return outcomes_; }
    int n_max() const { return n_max_; }

    double operator()(int outcome, int photons) const {
        return entries_[static_cast<std::size_t>(outcome) * static_cast<std::size_t>(n_max_ + 1) +
                        static_cast<std::size_t>(photons)];
    }
    std::span<const double> row(int outcome) const;

    std::string outcome_label(int outcome) const;

  private:
    DetectorKind kind_;
    int outcomes_;
    int n_max_;
    std::vector<double> entries_;
};

PovmTable binary_povm(double efficiency, int n_max);

PovmTable pnr_povm(double efficiency, int n_max);

// Outcome dimension is min(modes, n_max) + 1. Built from the exact bin
// occupancy recursion, which never subtracts.
PovmTable pseudo_pnr_povm(double efficiency, int modes, int n_max);

PovmTable make_povm(const DetectorModel& detector, int n_max);

// Closed-form inclusion-exclusion for a single pseudo-PNR entry:
//   C(M, n) sum_j (-1)^j C(n, j) ((1 - eta) + eta (n - j) / M)^N.
// Suffers catastrophic cancellation once C(M, n) C(n, n/2) is large; only
// used as an independent check where it is well conditioned.
double pseudo_pnr_probability_direct(double efficiency, int modes, int clicks, int photons);

}  // namespace muxsim
