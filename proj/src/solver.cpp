#include "muxsim/solver.hpp"

#include <cmath>

#include "muxsim/errors.hpp"

namespace muxsim {

std::string CalibrationError::code() const {
    return reason_ == Reason::not_bracketed ? "not-bracketed" : "non-monotone";
}

double snr_at(const MultiplexConfig& system, double nbar, SnrReference reference) {
    const SystemMetrics metrics = multiplexed_metrics(system.with_nbar(nbar));
    return reference == SnrReference::heralded ? metrics.snr : metrics.delivered_snr;
}

CalibrationResult calibrate_nbar(double target_snr, const MultiplexConfig& system, const CalibrationOptions& options) {
    if (!(target_snr > 0.0 && std::isfinite(target_snr))) throw DomainError("target SNR must be positive and finite");
    if (!(options.bracket_lo > 0.0 && options.bracket_lo < options.bracket_hi && std::isfinite(options.bracket_hi))) {
        throw DomainError("calibration bracket must satisfy 0 < lo < hi");
    }

    double lo = options.bracket_lo;
    double hi = options.bracket_hi;
    double snr_lo = snr_at(system, lo, options.reference);
    double snr_hi = snr_at(system, hi, options.reference);
    if (!(snr_lo >= target_snr && snr_hi <= target_snr)) {
        throw CalibrationError(CalibrationError::Reason::not_bracketed,
                               "SNR " + std::to_string(target_snr) + " is not bracketed: SNR(" + std::to_string(lo) +
                                   ") = " + std::to_string(snr_lo) + ", SNR(" + std::to_string(hi) +
                                   ") = " + std::to_string(snr_hi));
    }

    CalibrationResult result;
    for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
        const double mid = std::sqrt(lo * hi);
        const double snr_mid = snr_at(system, mid, options.reference);
        if (!(snr_mid <= snr_lo && snr_mid >= snr_hi)) {
            throw CalibrationError(CalibrationError::Reason::non_monotone,
                                   "SNR is not monotone in the mean photon number near " + std::to_string(mid));
        }
        result = {mid, snr_mid, iteration, {lo, hi}};
        if (std::abs(snr_mid - target_snr) <= options.snr_tolerance) break;
        if (snr_mid > target_snr) {
            lo = mid;
            snr_lo = snr_mid;
        } else {
            hi = mid;
            snr_hi = snr_mid;
        }
        if (hi - lo <= options.min_width) break;
    }
    return result;
}

}  // namespace muxsim
