#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "qgrav/calibration.hpp"
#include "qgrav/data_files.hpp"

namespace qgrav {
namespace {

constexpr auto peri = QuantumRule::perihelion_distance;
constexpr auto semi = QuantumRule::semi_minor_axis;

const std::vector<PlanetElements>& planets() {
    static const auto p = bundled_planets();
    return p;
}

// Brute-force chi^2 minimization over the full (nonlinear) pipeline.
double brute_force_delta(const std::vector<Observation>& obs, QuantumRule rule) {
    auto chi2 = [&](double d) {
        double s = 0.0;
        for (const auto& o : obs) {
            const double r = o.value - planet_precession(find_planet(planets(), o.planet), d, rule).per_century;
            s += r * r / (o.sigma * o.sigma);
        }
        return s;
    };
    double lo = 0.0, hi = 0.2;
    for (int it = 0; it < 300; ++it) {
        const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        (chi2(m1) < chi2(m2) ? hi : lo) = (chi2(m1) < chi2(m2) ? m2 : m1);
    }
    return 0.5 * (lo + hi);
}

TEST(InvertDelta, Examples) {
    const auto& me = planets()[0];
    EXPECT_EQ(invert_delta(me, 0.0), 0.0);
    const double target = planet_precession(me, 0.0398, peri).per_century;
    EXPECT_NEAR(target, 43.06, 0.01);
    EXPECT_NEAR(invert_delta(me, target, peri) / 0.0398, 1.0, 1e-6);
    EXPECT_NEAR(invert_delta(me, 43.11, peri), 0.03985, 5e-5);
    EXPECT_THROW(invert_delta(me, -1.0), domain_error);
    EXPECT_THROW(invert_delta(me, std::numeric_limits<double>::infinity()), domain_error);
}

TEST(InvertDelta, RoundTripProperty) {
    for (const auto& el : planets()) {
        for (auto rule : {peri, semi}) {
            for (int i = 0; i < 300; ++i) {
                const double d = testing::log_uniform(1e-4, 0.05);
                const double back = invert_delta(el, planet_precession(el, d, rule).per_century, rule);
                ASSERT_NEAR(back / d, 1.0, 1e-10) << el.name << " " << d;
            }
        }
    }
}

TEST(FitDelta, SingleObservationEqualsInversion) {
    const std::vector<Observation> obs{{"Mercury", 43.11, 0.45}};
    const auto fit = fit_delta(obs, planets());
    EXPECT_NEAR(fit.delta_star / invert_delta(planets()[0], 43.11), 1.0, 1e-6);
    ASSERT_EQ(fit.residuals.size(), 1u);
    EXPECT_NEAR(fit.residuals[0].residual, 0.0, 1e-4);
}

TEST(FitDelta, TableObservations) {
    const auto obs = bundled_observations();
    const auto fit = fit_delta(obs, planets(), peri);
    // Closed-form WLS value computed independently of this code path.
    EXPECT_NEAR(fit.delta_star, 0.0395338, 1e-6);
    EXPECT_NEAR(fit.delta_sigma, 0.00041317, 1e-7);
    EXPECT_NEAR(fit.delta_star, brute_force_delta(obs, peri), 1e-7);
    ASSERT_EQ(fit.residuals.size(), 3u);
    EXPECT_LT(std::abs(fit.residuals[0].residual), 0.5);
    // model overshoots Venus and Earth
    EXPECT_LT(fit.residuals[1].residual, -fit.residuals[1].observed);
    EXPECT_LT(fit.residuals[2].residual, -fit.residuals[2].observed / 2);
    double chi2 = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        EXPECT_DOUBLE_EQ(fit.residuals[i].residual, fit.residuals[i].observed - fit.residuals[i].predicted);
        chi2 += std::pow(fit.residuals[i].residual / obs[i].sigma, 2);
    }
    EXPECT_NEAR(fit.chi2, chi2, 1e-12 * chi2);
}

TEST(FitDelta, WeightLimit) {
    std::vector<Observation> obs{{"Mercury", 43.11, 0.45}, {"Venus", 8.4, 1e12}, {"Earth", 5.0, 1e12}};
    EXPECT_NEAR(fit_delta(obs, planets()).delta_star / invert_delta(planets()[0], 43.11), 1.0, 1e-6);
}

TEST(FitDelta, RecoversSyntheticDelta) {
    for (auto rule : {peri, semi}) {
        const double truth = 0.0271;
        std::vector<Observation> obs;
        // Synthetic values on the fit's own linear model.
        for (const auto& el : planets()) {
            const double slope = planet_precession(el, 0.01, rule).per_century / 0.01;
            obs.push_back({el.name, slope * truth, testing::uniform(0.1, 5.0)});
        }
        const auto fit = fit_delta(obs, planets(), rule);
        EXPECT_NEAR(fit.delta_star / truth, 1.0, 1e-12);
        EXPECT_NEAR(fit.chi2, 0.0, 1e-18);
    }
}

TEST(FitDelta, ChiSquareNonIncreasingInSigma) {
    const auto base = bundled_observations();
    const double chi0 = fit_delta(base, planets()).chi2;
    for (std::size_t i = 0; i < base.size(); ++i) {
        for (double scale : {1.01, 1.5, 10.0}) {
            auto obs = base;
            obs[i].sigma *= scale;
            EXPECT_LE(fit_delta(obs, planets()).chi2, chi0 * (1 + 1e-12));
        }
    }
}

TEST(FitDelta, Errors) {
    EXPECT_THROW(fit_delta({}, planets()), domain_error);
    EXPECT_THROW(fit_delta({{"Pluto", 1.0, 1.0}}, planets()), unknown_planet_error);
    EXPECT_THROW(fit_delta({{"Mercury", 1.0, 0.0}}, planets()), domain_error);
}

TEST(SweepDelta, Examples) {
    const auto& me = planets()[0];
    const auto two = sweep_delta(me, 0.01, 0.05, 2);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].delta, 0.01);
    EXPECT_EQ(two[1].delta, 0.05);
    EXPECT_NEAR(two[0].per_century, 10.82, 0.005);
    EXPECT_NEAR(two[1].per_century, 54.10, 0.005);
    EXPECT_NEAR(two[0].per_century, 10.8, 0.5);
    EXPECT_NEAR(two[1].per_century, 54.1, 0.5);

    const auto three = sweep_delta(me, 0.01, 0.05, 3);
    EXPECT_NEAR(three[1].delta, 0.03, 1e-15);
    EXPECT_NEAR(three[1].per_century, 32.46, 0.05);

    const auto zero = sweep_delta(planets()[2], 0.0, 0.02, 2);
    EXPECT_EQ(zero[0].delta, 0.0);
    EXPECT_EQ(zero[0].per_century, 0.0);
}

TEST(SweepDelta, MonotoneRows) {
    for (const auto& el : planets()) {
        const auto rows = sweep_delta(el, 0.0, 0.1, 101, semi);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            EXPECT_GT(rows[i].delta, rows[i - 1].delta);
            EXPECT_GT(rows[i].per_century, rows[i - 1].per_century);
        }
    }
}

TEST(SweepDelta, Errors) {
    const auto& me = planets()[0];
    EXPECT_THROW(sweep_delta(me, 0.05, 0.01, 3), domain_error);
    EXPECT_THROW(sweep_delta(me, -0.01, 0.01, 3), domain_error);
    EXPECT_THROW(sweep_delta(me, 0.0, 0.01, 1), domain_error);
}

}  // namespace
}  // namespace qgrav
