#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sbm/criticality.hpp"

using namespace sbm;

TEST(AlphaC, Checkpoints) {
    EXPECT_NEAR(alpha_c_numeric(0.6, 1.0, 0.1), 0.127121, 1e-4);
    EXPECT_NEAR(alpha_c_numeric(0.3, 1.0, 0.1), 0.032652, 1e-4);
    EXPECT_NEAR(alpha_c_numeric(0.8, 0.01, 0.05), 0.537184, 1e-4);
    EXPECT_NEAR(alpha_c_numeric(1.0, 1.0, 1e-3), 0.500004, 1e-4);
}

TEST(AlphaC, ScalingFormInScalingLimit) {
    for (double s : {0.5, 0.8}) {
        const double ac = alpha_c_numeric(s, 1.0, 1e-3);
        const auto r = solve_eta(BathSpec{s, ac, 1.0}, SystemSpec{1e-3});
        ASSERT_EQ(r.phase, Phase::Delocalized);
        const double sc = alpha_c_scaling(s, 1.0, r.delta_r);
        EXPECT_NEAR(ac, sc, 0.05 * sc) << s;
    }
    EXPECT_EQ(alpha_c_scaling(1.0, 1.0, 0.01), 0.5);
    EXPECT_NEAR(alpha_c_scaling(1.0 - 1e-7, 1.0, 0.01), 0.5, 1e-6);
    EXPECT_THROW(alpha_c_scaling(1.5, 1.0, 0.01), ValidationError);
    EXPECT_THROW(alpha_c_scaling(0.5, 1.0, 0.0), DomainError);
}

TEST(AlphaC, GapSignMatchesPoleExistence) {
    const double ac = alpha_c_numeric(0.8, 1.0, 0.1);
    for (double f : {0.5, 0.98, 1.02, 1.3}) {
        const double a = f * ac;
        const auto gap = coherence_gap(a, 0.8, 1.0, 0.1);
        ASSERT_TRUE(gap.has_value()) << f;
        const BathSpec b{0.8, a, 1.0};
        const auto r = solve_eta(b, SystemSpec{0.1});
        EXPECT_EQ(*gap > 0.0, omega0_solve(b, SystemSpec{0.1}, r).has_value()) << f;
        EXPECT_EQ(*gap > 0.0, f < 1.0);
    }
    EXPECT_FALSE(coherence_gap(10.0, 0.5, 0.01, 0.1).has_value());
}

TEST(AlphaC, OhmicFiniteTunneling) {
    const double sc = alpha_c_ohmic_finite(0.1);
    EXPECT_NEAR(sc, 0.512119, 1e-5);
    EXPECT_NEAR(sc, alpha_c_numeric(1.0, 1.0, 0.1), 1e-4);
    const auto r = solve_eta(BathSpec{1.0, sc, 1.0}, SystemSpec{0.1});
    EXPECT_NEAR(sc, 0.5 * (1 + r.delta_r), 1e-9);
    EXPECT_EQ(alpha_c_ohmic_finite(RenormResult{0.5, 0.2, Phase::Delocalized}), 0.6);
}

TEST(AlphaC, SearchErrorBeyondCap) {
    CriticalOptions opt;
    opt.alpha_max = 1e-3;
    EXPECT_THROW(alpha_c_numeric(0.8, 1.0, 0.1, opt), SearchError);
}

TEST(Crossover, OhmicClosedForm) {
    const auto c = alpha_c_star_ohmic_scaling();
    EXPECT_NEAR(c.x, 0.429448267731, 1e-10);
    EXPECT_NEAR(c.alpha, 0.325205, 1e-6);
    const double h = c.x - 1 + (1 + c.x - c.x * std::log(c.x)) / std::numbers::pi;
    EXPECT_NEAR(h, 0.0, 1e-14);
}

TEST(Crossover, NumericCheckpoints) {
    const double ohmic = alpha_c_star_numeric(1.0, 1.0, 1e-3);
    EXPECT_NEAR(ohmic, 0.325216, 1e-4);
    EXPECT_NEAR(ohmic, alpha_c_star_ohmic_scaling().alpha, 5e-3);
    EXPECT_NEAR(alpha_c_star_numeric(0.8, 0.1, 0.1), 0.340009, 1e-4);
}

TEST(Crossover, PredicateAroundBoundary) {
    const double cs = alpha_c_star_numeric(1.0, 1.0, 1e-3);
    EXPECT_TRUE(underdamped(0.98 * cs, 1.0, 1.0, 1e-3));
    EXPECT_FALSE(underdamped(1.02 * cs, 1.0, 1.0, 1e-3));
    EXPECT_FALSE(underdamped(10.0, 0.5, 0.01, 0.1));
}

TEST(Crossover, FinitePeakWellBelowCrossover) {
    const double cs = alpha_c_star_numeric(1.0, 1.0, 1e-3);
    const BathSpec b{1.0, 0.5 * cs, 1.0};
    const SystemSpec sys{1e-3};
    const auto r = solve_eta(b, sys);
    const auto peak = s_finite_peak(b, r);
    ASSERT_TRUE(peak.has_value());
    const auto w0 = omega0_solve(b, sys, r);
    ASSERT_TRUE(w0.has_value());
    EXPECT_NEAR(peak->omega / r.delta_r, *w0 / r.delta_r, 0.3);
    // Shoulder-free S near the origin rises toward the peak.
    EXPECT_GT(peak->value, s_zero_limit(b, r));
}

TEST(Crossover, SpectralPeakPredicateSitsAbovePoleDamping) {
    CrossoverOptions opt;
    opt.predicate = CrossoverPredicate::SpectralPeak;
    const double peak = alpha_c_star_numeric(1.0, 1.0, 1e-3, opt);
    EXPECT_NEAR(peak, 0.499447, 1e-3);
    EXPECT_GT(peak, alpha_c_star_numeric(1.0, 1.0, 1e-3));
    EXPECT_LE(peak, alpha_c_numeric(1.0, 1.0, 1e-3));
    EXPECT_STREQ(to_string(CrossoverPredicate::SpectralPeak), "spectral-peak");
}

TEST(PhaseDiagram, OhmicEndpointAndOrdering) {
    const auto pd = phase_diagram(1.0, 1.0, {1e-3, 1e-2, 5e-2});
    ASSERT_EQ(pd.points.size(), 3u);
    double prev_c = 0.0, prev_cs = 0.0;
    for (const auto& p : pd.points) {
        ASSERT_TRUE(p.failures.empty()) << p.failures.front();
        EXPECT_EQ(*p.alpha_l, 1.0);
        EXPECT_LT(*p.alpha_c_star, *p.alpha_c);
        EXPECT_LT(*p.alpha_c, *p.alpha_l);
        EXPECT_GT(*p.alpha_c, prev_c);
        EXPECT_GT(*p.alpha_c_star, prev_cs);
        prev_c = *p.alpha_c;
        prev_cs = *p.alpha_c_star;
    }
    EXPECT_NEAR(*pd.points.front().alpha_c, 0.500004, 1e-4);
    EXPECT_NEAR(*pd.points.front().alpha_c_star, 0.325216, 1e-4);
}

TEST(PhaseDiagram, SubOhmicPowerLaws) {
    const auto pd = phase_diagram(0.8, 1.0, delta_grid(1e-4, 1e-2, 2));
    ASSERT_EQ(pd.fits.size(), 3u);
    for (const auto& p : pd.points) {
        ASSERT_TRUE(p.failures.empty()) << p.failures.front();
        EXPECT_LT(*p.alpha_c_star, *p.alpha_c);
        EXPECT_LT(*p.alpha_c, *p.alpha_l);
    }
    // Power laws hold tightly; the exponents carry (1 - a)-type corrections above 1 - s.
    for (const auto& f : pd.fits) {
        EXPECT_EQ(f.points, 4u) << f.boundary;
        EXPECT_LT(f.residual, 0.02) << f.boundary;
        EXPECT_NEAR(f.exponent, 0.2, 0.03) << f.boundary;
        EXPECT_GT(f.exponent, 0.2) << f.boundary;
    }
}

TEST(PhaseDiagram, FailuresRecordedInline) {
    PhaseDiagramOptions opt;
    opt.crossover.critical.alpha_max = 1e-3;
    opt.parallel = false;
    const auto pd = phase_diagram(0.8, 1.0, {0.05}, opt);
    ASSERT_EQ(pd.points.size(), 1u);
    const auto& p = pd.points.front();
    EXPECT_TRUE(p.alpha_l.has_value());
    EXPECT_FALSE(p.alpha_c.has_value());
    EXPECT_FALSE(p.alpha_c_star.has_value());
    ASSERT_EQ(p.failures.size(), 2u);
    EXPECT_EQ(p.failures.front().rfind("alpha_c: ", 0), 0u);
}

TEST(PhaseDiagram, GridValidation) {
    EXPECT_THROW(phase_diagram(0.8, 1.0, {0.01, 0.005}), ValidationError);
    EXPECT_THROW(phase_diagram(1.2, 1.0, {0.01}), ValidationError);
    EXPECT_THROW(delta_grid(0.1, 0.01), ValidationError);
    const auto g = delta_grid(1e-4, 1e-1, 4);
    ASSERT_EQ(g.size(), 13u);
    EXPECT_NEAR(g.front(), 1e-4, 1e-18);
    EXPECT_NEAR(g.back(), 1e-1, 1e-15);
}

TEST(PowerLaw, SyntheticData) {
    std::vector<double> x, y;
    for (double v : {1e-4, 1e-3, 1e-2}) {
        x.push_back(v);
        y.push_back(3.0 * std::pow(v, 0.25));
    }
    const auto f = fit_power_law("demo", x, y);
    EXPECT_NEAR(f.exponent, 0.25, 1e-12);
    EXPECT_NEAR(f.prefactor, 3.0, 1e-10);
    EXPECT_LT(f.residual, 1e-12);
    EXPECT_EQ(f.points, 3u);
    EXPECT_TRUE(std::isnan(fit_power_law("one", {1.0}, {1.0}).exponent));
}
