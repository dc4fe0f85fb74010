#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "muxsim/errors.hpp"
#include "muxsim/fock.hpp"

using namespace muxsim;

TEST(Thermal, VacuumWhenUnpumped) {
    const auto d = thermal_distribution(0.0, 5);
    EXPECT_DOUBLE_EQ(d[0], 1.0);
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(d[n], 0.0);
}

TEST(Thermal, UnitMeanPhotonNumber) {
    const auto d = thermal_distribution(1.0, 3);
    const double expected[] = {0.5, 0.25, 0.125, 0.0625};
    for (int n = 0; n <= 3; ++n) EXPECT_NEAR(d[n], expected[n], 1e-15);
    EXPECT_NEAR(d.total(), 0.9375, 1e-15);
}

TEST(Thermal, RejectsInvalidMean) {
    EXPECT_THROW(thermal_distribution(-0.1, 4), DomainError);
    EXPECT_THROW(thermal_distribution(std::numeric_limits<double>::quiet_NaN(), 4), DomainError);
    EXPECT_THROW(thermal_distribution(std::numeric_limits<double>::infinity(), 4), DomainError);
    EXPECT_THROW(thermal_distribution(0.5, kMaxCutoff + 1), DomainError);
}

TEST(Thermal, SinglePairProbabilityPeaksAtQuarter) {
    double best = 0.0;
    double best_nbar = 0.0;
    for (int i = 1; i <= 400; ++i) {
        const double nbar = 0.01 * i;
        const double p1 = thermal_distribution(nbar, 1)[1];
        if (p1 > best) {
            best = p1;
            best_nbar = nbar;
        }
    }
    EXPECT_NEAR(best, 0.25, 1e-12);
    EXPECT_NEAR(best_nbar, 1.0, 1e-12);
}

TEST(Thermal, NormalizedAtChosenCutoff) {
    for (double nbar : {1e-6, 1e-3, 0.05, 0.3, 1.0, 2.0, 3.5}) {
        const Cutoff c = choose_cutoff(nbar);
        ASSERT_FALSE(c.saturated) << nbar;
        const auto d = thermal_distribution(nbar, c.n_max);
        EXPECT_NEAR(d.total(), 1.0, 1e-12) << nbar;
        EXPECT_NEAR(mean_photon_number(d), nbar, 1e-9 * std::max(1.0, nbar)) << nbar;
    }
}

TEST(Thermal, ConstantRatioAndStrictDecrease) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pick(1e-4, 4.0);
    for (int rep = 0; rep < 50; ++rep) {
        const double nbar = pick(rng);
        const auto d = thermal_distribution(nbar, 40);
        const double ratio = nbar / (nbar + 1.0);
        for (int n = 0; n < 40; ++n) {
            EXPECT_NEAR(d[n + 1] / d[n], ratio, 1e-12) << nbar << " n=" << n;
            EXPECT_LT(d[n + 1], d[n]);
        }
    }
}

TEST(Cutoff, Examples) {
    EXPECT_EQ(choose_cutoff(0.0).n_max, 0);
    EXPECT_EQ(choose_cutoff(1.0, 1e-12).n_max, 39);
    EXPECT_EQ(choose_cutoff(2.0, 1e-12).n_max, 68);
    EXPECT_FALSE(choose_cutoff(2.0).saturated);
}

TEST(Cutoff, TailBoundIsTight) {
    for (double nbar : {1e-5, 0.01, 0.2, 1.0, 2.0, 5.0}) {
        for (double tol : {1e-6, 1e-9, 1e-12}) {
            const Cutoff c = choose_cutoff(nbar, tol);
            const double r = nbar / (nbar + 1.0);
            EXPECT_LE(std::pow(r, c.n_max + 1), tol);
            if (c.n_max > 0) EXPECT_GT(std::pow(r, c.n_max), tol);
        }
    }
}

TEST(Cutoff, SaturatesAtMaximum) {
    const Cutoff c = choose_cutoff(1e3);
    EXPECT_EQ(c.n_max, kMaxCutoff);
    EXPECT_TRUE(c.saturated);
    EXPECT_THROW(choose_cutoff(-1.0), DomainError);
    EXPECT_THROW(choose_cutoff(1.0, 0.0), DomainError);
}

TEST(Distribution, Validation) {
    EXPECT_THROW(PhotonNumberDistribution(std::vector<double>{}), DomainError);
    EXPECT_THROW(PhotonNumberDistribution({0.5, -0.1}), DomainError);
    EXPECT_THROW(PhotonNumberDistribution({0.7, 0.4}), DomainError);
    EXPECT_THROW(PhotonNumberDistribution(std::vector<double>(kMaxCutoff + 2, 0.0)), DomainError);
    EXPECT_NO_THROW(PhotonNumberDistribution({0.5, 0.5 + 5e-13}));
}

TEST(Distribution, FockAndVacuum) {
    const auto one = PhotonNumberDistribution::fock(1, 3);
    EXPECT_EQ(one.n_max(), 3);
    EXPECT_EQ(one[1], 1.0);
    EXPECT_EQ(one[7], 0.0);
    EXPECT_EQ(mean_photon_number(one), 1.0);
    EXPECT_EQ(mean_photon_number(PhotonNumberDistribution::vacuum(4)), 0.0);
    EXPECT_THROW(PhotonNumberDistribution::fock(5, 3), DomainError);
}

TEST(Binomial, PascalTable) {
    EXPECT_EQ(binomial(5, 2), 10.0);
    EXPECT_EQ(binomial(0, 0), 1.0);
    EXPECT_EQ(binomial(4, 5), 0.0);
    const double expected = std::exp(std::lgamma(201.0) - 2.0 * std::lgamma(101.0));
    EXPECT_NEAR(binomial(200, 100) / expected, 1.0, 1e-10);
    EXPECT_THROW(binomial(kMaxCutoff + 1, 1), DomainError);
}
