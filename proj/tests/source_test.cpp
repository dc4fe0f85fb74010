#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "muxsim/channel.hpp"
#include "muxsim/errors.hpp"
#include "muxsim/source.hpp"

using namespace muxsim;

namespace {

std::vector<DetectorModel> detectors(double eta) {
    return {DetectorModel::binary(eta), DetectorModel::pnr(eta), DetectorModel::pseudo_pnr(8, eta)};
}

}  // namespace

TEST(HeraldEnsemble, IdealPnrOnFockTwo) {
    const auto pairs = PhotonNumberDistribution::fock(2, 2);
    const auto e = herald_ensemble(pairs, pnr_povm(1.0, 2));
    EXPECT_EQ(e.outcome_probs, (std::vector<double>{0.0, 0.0, 1.0}));
    EXPECT_FALSE(e.conditionals[0]);
    EXPECT_FALSE(e.conditionals[1]);
    ASSERT_TRUE(e.conditionals[2]);
    EXPECT_EQ((*e.conditionals[2])[2], 1.0);
}

TEST(HeraldEnsemble, BinaryOnThermal) {
    const auto pairs = thermal_distribution(1.0, 3);
    const auto e = herald_ensemble(pairs, binary_povm(0.5, 3));
    const double click = 0.25 * 0.5 + 0.125 * 0.75 + 0.0625 * 0.875;
    EXPECT_NEAR(e.outcome_probs[1], click, 1e-15);
    ASSERT_TRUE(e.conditionals[1]);
    EXPECT_EQ((*e.conditionals[1])[0], 0.0);
    EXPECT_NEAR((*e.conditionals[1])[1], 0.125 / click, 1e-15);
}

TEST(HeraldEnsemble, RejectsShortPovm) {
    EXPECT_THROW(herald_ensemble(thermal_distribution(0.1, 10), binary_povm(0.5, 5)), StructuralError);
}

TEST(HeraldEnsemble, LawOfTotalProbability) {
    for (double eta : {0.0, 0.3, 0.7, 1.0}) {
        for (const auto& detector : detectors(eta)) {
            for (double nbar : {0.01, 0.1, 1.0, 2.0}) {
                const int n_max = choose_cutoff(nbar).n_max;
                const auto pairs = thermal_distribution(nbar, n_max);
                const auto e = herald_ensemble(pairs, make_povm(detector, n_max));
                double sum = 0.0;
                for (double p : e.outcome_probs) sum += p;
                EXPECT_NEAR(sum, pairs.total(), 1e-10);
                for (int n = 0; n <= n_max; ++n) {
                    double rebuilt = 0.0;
                    for (std::size_t m = 0; m < e.outcome_probs.size(); ++m) {
                        if (e.conditionals[m]) rebuilt += e.outcome_probs[m] * (*e.conditionals[m])[n];
                    }
                    EXPECT_NEAR(rebuilt, pairs[n], 1e-12);
                }
                for (const auto& c : e.conditionals) {
                    if (c) EXPECT_NEAR(c->total(), 1.0, 1e-12);
                }
            }
        }
    }
}

TEST(HeraldEnsemble, IdealPnrConditionalsArePointMasses) {
    const int n_max = choose_cutoff(0.5).n_max;
    const auto e = herald_ensemble(thermal_distribution(0.5, n_max), pnr_povm(1.0, n_max));
    for (int m = 0; m <= n_max; ++m) {
        ASSERT_TRUE(e.conditionals[static_cast<std::size_t>(m)]) << m;
        EXPECT_NEAR((*e.conditionals[static_cast<std::size_t>(m)])[m], 1.0, 1e-12);
    }
}

TEST(SuccessOutcome, IsOneForEveryDetector) {
    for (const auto& d : detectors(0.7)) EXPECT_EQ(success_outcome(d), 1);
}

TEST(StateMetrics, Examples) {
    const PhotonNumberDistribution d({0.1, 0.6, 0.2, 0.1});
    EXPECT_NEAR(snr_of(d), 2.0, 1e-15);
    EXPECT_NEAR(fidelity_of(d), 0.6, 1e-15);
    EXPECT_EQ(snr_of(PhotonNumberDistribution::fock(1, 3)), std::numeric_limits<double>::infinity());
    EXPECT_FALSE(snr_degenerate(PhotonNumberDistribution::fock(1, 3)));
    EXPECT_TRUE(snr_degenerate(PhotonNumberDistribution::vacuum(3)));
    EXPECT_EQ(snr_of(PhotonNumberDistribution::fock(2, 3)), 0.0);
    EXPECT_NEAR(fidelity_of(apply_loss(PhotonNumberDistribution::fock(1, 1), 0.4)), 0.4, 1e-15);
}

TEST(SingleSource, IdealPnrHeraldsPureSinglePhotons) {
    const SystemMetrics m = single_source_metrics(1.0, DetectorModel::pnr(1.0));
    EXPECT_NEAR(m.p_heralding, 0.25, 1e-12);
    EXPECT_NEAR(m.fidelity, 1.0, 1e-12);
    EXPECT_NEAR(m.p_success, 0.25, 1e-12);
    EXPECT_TRUE(std::isinf(m.snr));
    for (double nbar : {1e-4, 0.1, 2.0}) EXPECT_TRUE(std::isinf(single_source_metrics(nbar, DetectorModel::pnr(1.0)).snr));
}

TEST(SingleSource, BinaryOperatingPoint) {
    const SystemMetrics m = single_source_metrics(0.00768823932, DetectorModel::binary(0.7));
    EXPECT_NEAR(m.snr, 100.0, 0.1);
    EXPECT_GT(m.p_success, 5e-3);
    EXPECT_LT(m.p_success, 6e-3);
}

TEST(SingleSource, UnpumpedSourceNeverHeralds) {
    for (const auto& d : detectors(0.7)) {
        const SystemMetrics m = single_source_metrics(0.0, d);
        EXPECT_EQ(m.p_heralding, 0.0);
        EXPECT_EQ(m.p_success, 0.0);
    }
}

TEST(SingleSource, BlindDetectorLeavesNoHeraldedState) {
    const HeraldedSource s = prepare_source(0.3, DetectorModel::binary(0.0));
    EXPECT_EQ(s.success_probability(), 0.0);
    EXPECT_FALSE(s.heralded_state());
    const SystemMetrics m = single_source_metrics(0.3, DetectorModel::binary(0.0));
    EXPECT_EQ(m.fidelity, 0.0);
    EXPECT_EQ(m.snr, 0.0);
}

TEST(SingleSource, SnrFallsWithPumpPower) {
    for (double eta : {0.3, 0.7}) {
        for (const auto& detector : detectors(eta)) {
            double previous = std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 60; ++i) {
                const double nbar = 1e-4 * std::pow(2e4, i / 60.0);
                const double snr = single_source_metrics(nbar, detector).snr;
                EXPECT_LT(snr, previous) << detector.label() << " nbar=" << nbar;
                previous = snr;
            }
        }
    }
}

TEST(SingleSource, BetterDetectorsGiveHigherSnr) {
    for (double nbar : {0.01, 0.1, 0.5}) {
        const double binary = single_source_metrics(nbar, DetectorModel::binary(0.7)).snr;
        const double pseudo = single_source_metrics(nbar, DetectorModel::pseudo_pnr(8, 0.7)).snr;
        const double pnr = single_source_metrics(nbar, DetectorModel::pnr(0.7)).snr;
        EXPECT_LT(binary, pseudo);
        EXPECT_LT(pseudo, pnr);
    }
}
