// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace lamperti {

/// Philox4x32-10 block function (Salmon et al., SC'11).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

/// Two uniforms on [0,1) with 53-bit resolution.
struct UniformPair {
    double u1;
    double u2;
};

/// Counter-based stream: block k of trajectory t depends only on
/// (seed, t, k), so any partition of trajectories over threads reproduces the
/// same numbers.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t trajectory)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, trajectory_(trajectory) {}

    /// Consumes one counter block.
    UniformPair next_pair() {
        const auto out = philox4x32({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                     static_cast<std::uint32_t>(trajectory_),
                                     static_cast<std::uint32_t>(trajectory_ >> 32)},
                                    key_);
        ++block_;
        return {to_unit(out[0], out[1]), to_unit(out[2], out[3])};
    }

    double uniform() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const UniformPair p = next_pair();
        spare_ = p.u2;
        has_spare_ = true;
        return p.u1;
    }

    std::uint64_t blocks_used() const { return block_; }

private:
    static double to_unit(std::uint32_t hi, std::uint32_t lo) {
        const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32 | lo) >> 11;
        return static_cast<double>(bits) * 0x1.0p-53;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t trajectory_;
    std::uint64_t block_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace lamperti
