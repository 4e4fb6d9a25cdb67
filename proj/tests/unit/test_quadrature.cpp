// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "lamperti/error.hpp"
#include "lamperti/quadrature.hpp"

namespace sf = lamperti::specialfn;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST(Quadrature, SmoothIntegrals) {
    EXPECT_NEAR(sf::integrate_adaptive(sf::Integrand([](double x) { return std::sin(x); }), 0.0, std::numbers::pi,
                                       1e-13),
                2.0, 1e-12);
    EXPECT_NEAR(sf::integrate_adaptive(sf::Integrand([](double x) { return std::exp(-x); }), 0.0, kInf, 1e-13), 1.0,
                1e-12);
    EXPECT_NEAR(sf::integrate_adaptive(sf::Integrand([](double x) { return 1.0 / (1.0 + x * x); }), 0.0, kInf, 1e-13),
                std::numbers::pi / 2, 1e-12);
}

TEST(Quadrature, EndpointSingularities) {
    // ∫_0^1 x^{-0.9} = 10 and ∫_0^1 (1-x)^{-0.5} = 2, using the exact distance to 1.
    EXPECT_NEAR(sf::integrate_adaptive(sf::Integrand([](double x) { return std::pow(x, -0.9); }), 0.0, 1.0, 1e-12),
                10.0, 1e-9);
    const sf::EndpointIntegrand f = [](double, double, double to_b) { return std::pow(to_b, -0.5); };
    EXPECT_NEAR(sf::integrate_adaptive(f, 0.0, 1.0, 1e-12), 2.0, 1e-10);
    EXPECT_NEAR(sf::integrate_adaptive(sf::Integrand([](double x) { return std::pow(x, -1.5); }), 1.0, kInf, 1e-12),
                2.0, 1e-10);
}

TEST(Quadrature, PiecewiseKinkConvergesAfterBisection) {
    const double v = sf::integrate_adaptive(sf::Integrand([](double x) { return std::abs(x - 0.3); }), 0.0, 1.0, 1e-12);
    EXPECT_NEAR(v, 0.5 * (0.09 + 0.49), 1e-11);
}

TEST(Quadrature, ReversedAndEmptyRanges) {
    const sf::Integrand f = [](double x) { return x * x; };
    EXPECT_EQ(sf::integrate_adaptive(f, 2.0, 2.0, 1e-12), 0.0);
    EXPECT_NEAR(sf::integrate_adaptive(f, 1.0, 0.0, 1e-12), -1.0 / 3.0, 1e-13);
}

TEST(Quadrature, InvalidLimits) {
    const sf::Integrand f = [](double x) { return x; };
    EXPECT_THROW(sf::integrate_adaptive(f, std::nan(""), 1.0, 1e-12), lamperti::DomainError);
    EXPECT_THROW(sf::integrate_adaptive(f, -kInf, 1.0, 1e-12), lamperti::DomainError);
}

TEST(Quadrature, NonIntegrableSingularityIsReported) {
    const sf::Integrand f = [](double x) { return 1.0 / x; };
    EXPECT_THROW(sf::integrate_adaptive(f, 0.0, 1.0, 1e-12), lamperti::ConvergenceError);
}
