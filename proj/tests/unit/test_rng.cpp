// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "lamperti/rng.hpp"

using lamperti::Stream;

TEST(Philox, KnownAnswer) {
    // Random123 known-answer vectors for philox4x32-10.
    auto zero = lamperti::philox4x32({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(zero[0], 0x6627e8d5u);
    EXPECT_EQ(zero[1], 0xe169c58du);
    EXPECT_EQ(zero[2], 0xbc57ac4cu);
    EXPECT_EQ(zero[3], 0x9b00dbd8u);
    auto pi = lamperti::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(pi[0], 0xd16cfe09u);
    EXPECT_EQ(pi[1], 0x94fdccebu);
    EXPECT_EQ(pi[2], 0x5001e420u);
    EXPECT_EQ(pi[3], 0x24126ea1u);
}

TEST(Stream, ReproducibleAndIndependentOfOtherStreams) {
    Stream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    for (int k = 0; k < 100; ++k) {
        const auto pa = a.next_pair();
        const auto pb = b.next_pair();
        EXPECT_EQ(pa.u1, pb.u1);
        EXPECT_EQ(pa.u2, pb.u2);
        EXPECT_NE(pa.u1, c.next_pair().u1);
        EXPECT_NE(pa.u1, d.next_pair().u1);
    }
    EXPECT_EQ(a.blocks_used(), 100u);
}

TEST(Stream, UniformsInUnitIntervalWithRightMoments) {
    Stream s(1, 0);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum2 += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(sum2 / n, 1.0 / 3, 0.005);
    EXPECT_EQ(s.blocks_used(), static_cast<std::uint64_t>(n / 2));
}

TEST(Stream, PairsSpreadOverBins) {
    Stream s(9, 3);
    std::array<int, 16> bins{};
    const int n = 160000;
    for (int k = 0; k < n; ++k) {
        const auto p = s.next_pair();
        ++bins[static_cast<int>(p.u1 * 4) * 4 + static_cast<int>(p.u2 * 4)];
    }
    double chi2 = 0.0;
    for (int b : bins) chi2 += (b - n / 16.0) * (b - n / 16.0) / (n / 16.0);
    EXPECT_LT(chi2, 37.7);  // 15 dof, p = 0.001
}
