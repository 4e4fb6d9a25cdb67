// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lamperti/classify.hpp"
#include "lamperti/error.hpp"
#include "support/oracles.hpp"

using namespace lamperti;

namespace {

constexpr double kPi = std::numbers::pi;

ChainSpec make(Regime r, double e, double gamma = 0.0, double b = 0.0) {
    ChainSpec s;
    s.regime = r;
    if (r == Regime::LineIn) {
        s.tail.beta = e;
        s.tail.alpha = 3.0;
    } else {
        s.tail.alpha = e;
    }
    if (r == Regime::LineBalanced) s.p_heavy = 0.2;
    s.drift = {gamma, b};
    return s;
}

ChainSpec plane(double alpha, double p_radial, double c_r = 1.0, double c_t = 1.0) {
    ChainSpec s;
    s.regime = Regime::Plane;
    s.tail.alpha = alpha;
    s.plane = PlaneParams{p_radial, c_r, c_t, 2.0};
    return s;
}

}  // namespace

TEST(Classify, NegligibleDriftTable) {
    struct Row {
        ChainSpec spec;
        Phase phase;
        std::optional<double> q;
    };
    const Row rows[] = {
        {make(Regime::HalfLine, 1.5), Phase::NullRecurrent, 1.0 / 1.5},
        {make(Regime::LineOut, 1.25, 0.9, -1.0), Phase::NullRecurrent, 0.8},
        {make(Regime::LineIn, 1.8), Phase::NullRecurrent, 0.6 / 1.8},
        {make(Regime::LineIn, 1.3), Phase::TransientOscillatory, std::nullopt},
        {make(Regime::LineBalanced, 1.5), Phase::NullRecurrent, 1.0 - 1.0 / 1.5},
    };
    for (const auto& r : rows) {
        const Classification c = classify(r.spec);
        EXPECT_EQ(c.phase, r.phase) << c.theorem_tag;
        EXPECT_EQ(c.moment_exponent.has_value(), r.q.has_value());
        if (r.q) EXPECT_NEAR(*c.moment_exponent, *r.q, 1e-14);
        EXPECT_FALSE(c.theorem_tag.empty());
    }
}

TEST(Classify, StrongDrift) {
    const Classification in = classify(make(Regime::HalfLine, 1.5, 0.2, -1.0));
    EXPECT_EQ(in.phase, Phase::PositiveRecurrent);
    EXPECT_NEAR(*in.moment_exponent, 1.5 / 1.2, 1e-14);
    EXPECT_EQ(in.boundary_inclusive, Inclusivity::Infinite);
    EXPECT_EQ(classify(make(Regime::HalfLine, 1.5, 0.2, 0.3)).phase, Phase::Transient);
    EXPECT_EQ(classify(make(Regime::LineOut, 1.5, 0.2, 0.3)).phase, Phase::TransientDirectional);
}

TEST(Classify, CriticalDriftAgainstThreshold) {
    // Half line, α = 1.5: threshold b = -c π/sin(πα) = π. x0 = 10 keeps an
    // outward pull of that size below the heavy component's mean.
    auto half = [](double b) {
        ChainSpec s = make(Regime::HalfLine, 1.5, 0.5, b);
        s.tail.x0 = 10.0;
        return s;
    };
    EXPECT_EQ(classify(half(3.0)).phase, Phase::NullRecurrent);
    EXPECT_EQ(classify(half(3.2)).phase, Phase::Transient);
    EXPECT_EQ(classify(half(kPi)).phase, Phase::Critical);
    // Line in, β = 1.3: threshold -π cot(1.3π).
    const double t_in = -kPi / std::tan(1.3 * kPi);
    EXPECT_EQ(classify(make(Regime::LineIn, 1.3, 0.3, t_in - 0.1)).phase, Phase::NullRecurrent);
    EXPECT_EQ(classify(make(Regime::LineIn, 1.3, 0.3, t_in + 0.1)).phase, Phase::TransientOscillatory);
    const Classification tie = classify(make(Regime::LineIn, 1.3, 0.3, t_in));
    EXPECT_EQ(tie.phase, Phase::Critical);
    EXPECT_EQ(tie.theorem_tag.rfind("uncovered", 0), 0u);
    // Balanced, α = 1.5: threshold -π cot(0.75π) = π.
    auto bal = [](double b) {
        ChainSpec s = make(Regime::LineBalanced, 1.5, 0.5, b);
        s.tail.x0 = 100.0;
        return s;
    };
    EXPECT_EQ(classify(bal(3.3)).phase, Phase::TransientOscillatory);
    EXPECT_EQ(classify(bal(3.0)).phase, Phase::NullRecurrent);
    EXPECT_EQ(classify(bal(-0.4)).phase, Phase::NullRecurrent);
}

TEST(Classify, CriticalRecurrentCarriesNuStar) {
    const ChainSpec s = make(Regime::HalfLine, 1.5, 0.5, -2.0);
    const Classification c = classify(s);
    ASSERT_EQ(c.phase, Phase::NullRecurrent);
    ASSERT_TRUE(c.nu_star.has_value());
    EXPECT_NEAR(*c.nu_star, *oracle::nu_star(s), 1e-10);
    EXPECT_NEAR(*c.moment_exponent, *c.nu_star / 1.5, 1e-14);
    EXPECT_LT(c.deciding_quantity, 0.0);
}

TEST(Classify, UncoveredLineInAtThreeHalves) {
    const Classification c = classify(make(Regime::LineIn, 1.5));
    EXPECT_EQ(c.phase, Phase::Critical);
    EXPECT_EQ(c.theorem_tag.rfind("uncovered", 0), 0u);
    EXPECT_FALSE(c.moment_exponent.has_value());
}

TEST(Classify, TieToleranceIsConfigurable) {
    ChainSpec s = make(Regime::HalfLine, 1.5, 0.5, kPi + 1e-6);
    s.tail.x0 = 10.0;
    EXPECT_EQ(classify(s).phase, Phase::Transient);
    EXPECT_EQ(classify(s, 1e-5).phase, Phase::Critical);
}

TEST(Classify, PhaseNamesAndRecurrence) {
    EXPECT_EQ(to_string(Phase::TransientOscillatory), "TransientOscillatory");
    EXPECT_EQ(to_string(Inclusivity::Infinite), "infinite");
    EXPECT_TRUE(is_recurrent(Phase::PositiveRecurrent));
    EXPECT_TRUE(is_recurrent(Phase::NullRecurrent));
    EXPECT_FALSE(is_recurrent(Phase::Critical));
    EXPECT_FALSE(is_recurrent(Phase::TransientDirectional));
}

TEST(NuStar, AnchorsAtZeroDrift) {
    for (double e = 1.1; e < 1.95; e += 0.1) {
        EXPECT_NEAR(nu_star(make(Regime::HalfLine, e)).nu_star, 1.0, 1e-8) << e;
        EXPECT_NEAR(nu_star(make(Regime::LineBalanced, e)).nu_star, e - 1.0, 1e-8) << e;
        if (e > 1.55) EXPECT_NEAR(nu_star(make(Regime::LineIn, e)).nu_star, 2.0 * e - 3.0, 1e-8) << e;
    }
}

TEST(NuStar, MatchesBruteForceOracle) {
    oracle::Gen g(21);
    int checked = 0;
    for (int k = 0; k < 120; ++k) {
        const Regime r = static_cast<Regime>(g.pick(4));
        const double e = g.uniform(1.1, 1.9);
        ChainSpec s = make(r, e, e - 1.0, g.uniform(-4.0, 2.0));
        s.tail.c = g.uniform(0.5, 2.0);
        try {
            validate(s);
        } catch (const Error&) {
            continue;
        }
        const std::optional<double> want = oracle::nu_star(s);
        if (!want) {
            EXPECT_THROW(nu_star(s), NoRootError);
            continue;
        }
        const NuStarResult got = nu_star(s);
        EXPECT_NEAR(got.nu_star, *want, 1e-8) << to_string(r) << " e=" << e << " b=" << s.drift.b;
        EXPECT_LT(got.residual, 1e-8);
        ++checked;
    }
    EXPECT_GT(checked, 30);
}

TEST(NuStar, RootIsMonotoneInTheDrift) {
    // A stronger inward drift needs a larger ν to cancel.
    double prev = 0.0;
    for (double b = -0.5; b >= -3.0; b -= 0.5) {
        const double v = nu_star(make(Regime::HalfLine, 1.5, 0.5, b)).nu_star;
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(NuStar, RejectsNonCriticalDrift) {
    EXPECT_THROW(nu_star(make(Regime::HalfLine, 1.5, 0.2, -1.0)), DomainError);
}

TEST(NuStar, PlaneFormsAgree) {
    for (double pr : {0.6, 0.75, 0.9}) {
        const ChainSpec s = plane(1.5, pr);
        const NuStarResult r = nu_star(s);
        EXPECT_GT(r.nu_star, 0.0);
        EXPECT_LT(r.nu_star, 1.0);
        EXPECT_NEAR(r.nu_star, *oracle::nu_star(s), 1e-9);
        EXPECT_NEAR(plane_equation_gamma_form(s, r.nu_star), 0.0, 1e-10);
        // κ₀ form and Γ form differ by positive factors only, so they share the root.
        EXPECT_NEAR(nu_star_function(s, r.nu_star), 0.0, 1e-10);
    }
}

TEST(Plane, ThresholdSide) {
    // p c_R + 2(1-p) c_T cos(πα/2) decides; α = 1.5 gives the boundary p = √2/(1+√2).
    const double boundary = std::sqrt(2.0) / (1.0 + std::sqrt(2.0));
    EXPECT_EQ(classify(plane(1.5, 0.9)).phase, Phase::NullRecurrent);
    EXPECT_EQ(classify(plane(1.5, 0.1)).phase, Phase::Transient);
    EXPECT_EQ(classify(plane(1.5, boundary)).phase, Phase::Critical);
    EXPECT_EQ(classify(plane(1.5, boundary + 1e-3)).phase, Phase::NullRecurrent);
    EXPECT_THROW(nu_star(plane(1.5, 0.1)), NoRootError);
}

TEST(MomentExponent, RecurrentOnly) {
    const MomentExponent m = moment_exponent(make(Regime::HalfLine, 1.5));
    EXPECT_NEAR(m.q_crit, 2.0 / 3.0, 1e-15);
    EXPECT_THROW(moment_exponent(make(Regime::LineIn, 1.3)), NotRecurrentError);
}
