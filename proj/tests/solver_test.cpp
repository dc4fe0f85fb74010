#include <cmath>
#include <limits>
#include <string>

#include <gtest/gtest.h>

#include "golden.hpp"
#include "muxsim/errors.hpp"
#include "muxsim/solver.hpp"

using namespace muxsim;

namespace {

MultiplexConfig system(const DetectorModel& detector, int n) {
    MultiplexConfig c;
    c.detector = detector;
    c.n_sources = n;
    return c;
}

}  // namespace

TEST(Calibrate, BinarySingleSourceExample) {
    const auto r = calibrate_nbar(100.0, system(DetectorModel::binary(0.7), 1));
    EXPECT_GT(r.nbar_star, 7e-3);
    EXPECT_LT(r.nbar_star, 8e-3);
    EXPECT_NEAR(r.achieved_snr, 100.0, 0.1);
    EXPECT_NEAR(snr_at(system(DetectorModel::binary(0.7), 1), r.nbar_star, SnrReference::heralded), r.achieved_snr,
                1e-12);
}

TEST(Calibrate, MatchesFineGridScan) {
    for (const auto& row : golden::read("fixed_snr_nbar.csv")) {
        const auto config = system(DetectorModel::parse(row.at("detector"), 0.7), std::stoi(row.at("n_sources")));
        CalibrationOptions options;
        options.reference = row.at("snr_reference") == "delivered" ? SnrReference::delivered : SnrReference::heralded;
        const double expected = std::stod(row.at("nbar_star"));
        const auto r = calibrate_nbar(100.0, config, options);
        EXPECT_NEAR(r.nbar_star, expected, 1e-5 + 2e-3 * expected)
            << row.at("detector") << " N=" << row.at("n_sources") << " " << row.at("snr_reference");
        EXPECT_NEAR(r.achieved_snr, 100.0, 0.1);
    }
}

TEST(Calibrate, PnrOperatesAbovePseudoAboveBinary) {
    for (int n : {1, 16}) {
        const double binary = calibrate_nbar(100.0, system(DetectorModel::binary(0.7), n)).nbar_star;
        const double pseudo = calibrate_nbar(100.0, system(DetectorModel::pseudo_pnr(8, 0.7), n)).nbar_star;
        const double pnr = calibrate_nbar(100.0, system(DetectorModel::pnr(0.7), n)).nbar_star;
        EXPECT_LT(binary, pseudo);
        EXPECT_LT(pseudo, pnr);
    }
}

TEST(Calibrate, HitsTargetAcrossSystems) {
    for (double target : {10.0, 100.0, 1000.0}) {
        for (double eta : {0.3, 0.7}) {
            for (const auto& detector :
                 {DetectorModel::binary(eta), DetectorModel::pseudo_pnr(8, eta), DetectorModel::pnr(eta)}) {
                for (auto reference : {SnrReference::heralded, SnrReference::delivered}) {
                    const auto config = system(detector, 16);
                    CalibrationOptions options;
                    options.reference = reference;
                    const auto r = calibrate_nbar(target, config, options);
                    EXPECT_NEAR(snr_at(config, r.nbar_star, reference), target, 0.1)
                        << detector.label() << " eta=" << eta << " T=" << target;
                    EXPECT_GE(r.bracket.first, options.bracket_lo);
                    EXPECT_LE(r.bracket.second, options.bracket_hi);
                    EXPECT_LE(r.bracket.first, r.nbar_star);
                    EXPECT_GE(r.bracket.second, r.nbar_star);
                    EXPECT_LE(r.iterations, options.max_iterations);
                }
            }
        }
    }
}

TEST(Calibrate, Deterministic) {
    const auto config = system(DetectorModel::pseudo_pnr(8, 0.7), 16);
    const auto a = calibrate_nbar(100.0, config);
    const auto b = calibrate_nbar(100.0, config);
    EXPECT_EQ(a.nbar_star, b.nbar_star);
    EXPECT_EQ(a.achieved_snr, b.achieved_snr);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Calibrate, IdealPnrCannotBeBracketed) {
    try {
        calibrate_nbar(100.0, system(DetectorModel::pnr(1.0), 1));
        FAIL() << "expected CalibrationError";
    } catch (const CalibrationError& e) {
        EXPECT_EQ(e.reason(), CalibrationError::Reason::not_bracketed);
        EXPECT_EQ(e.code(), "not-bracketed");
    }
}

TEST(Calibrate, TargetOutsideNarrowBracket) {
    CalibrationOptions options;
    options.bracket_lo = 0.5;
    options.bracket_hi = 1.0;
    EXPECT_THROW(calibrate_nbar(100.0, system(DetectorModel::binary(0.7), 1), options), CalibrationError);
}

TEST(Calibrate, RejectsInvalidTargets) {
    const auto config = system(DetectorModel::binary(0.7), 1);
    EXPECT_THROW(calibrate_nbar(0.0, config), DomainError);
    EXPECT_THROW(calibrate_nbar(-5.0, config), DomainError);
    EXPECT_THROW(calibrate_nbar(std::numeric_limits<double>::infinity(), config), DomainError);
    CalibrationOptions reversed;
    reversed.bracket_lo = 1.0;
    reversed.bracket_hi = 0.1;
    EXPECT_THROW(calibrate_nbar(100.0, config, reversed), DomainError);
}
