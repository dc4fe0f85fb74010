#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "muxsim/multiplex.hpp"

namespace muxsim {

// Which state's SNR is held at the target.
enum class SnrReference {
    heralded,   // heralded idler state, before routing loss
    delivered,  // state leaving the switch tree
};

struct CalibrationOptions {
    double bracket_lo = 1e-6;
    double bracket_hi = 2.0;
    double snr_tolerance = 0.1;
    double min_width = 1e-12;
    int max_iterations = 200;
    SnrReference reference = SnrReference::heralded;
};

struct CalibrationResult {
    double nbar_star = 0.0;
    double achieved_snr = 0.0;
    int iterations = 0;
    // Final bisection interval; always inside the initial bracket.
    std::pair<double, double> bracket;
};

class CalibrationError : public std::runtime_error {
  public:
    enum class Reason { not_bracketed, non_monotone };

    CalibrationError(Reason reason, const std::string& message) : std::runtime_error(message), reason_(reason) {}

    Reason reason() const { return reason_; }
    // "not-bracketed" or "non-monotone".
    std::string code() const;

  private:
    Reason reason_;
};

double snr_at(const MultiplexConfig& system, double nbar, SnrReference reference);

// Bisects (on a log scale) for the mean photon number whose SNR equals
// target_snr. system.nbar is ignored. SNR must fall monotonically across the
// bracket; otherwise CalibrationError is thrown.
CalibrationResult calibrate_nbar(double target_snr, const MultiplexConfig& system,
                                 const CalibrationOptions& options = {});

}  // namespace muxsim
