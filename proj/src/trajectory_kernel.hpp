// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "lamperti/increments.hpp"
#include "lamperti/montecarlo.hpp"

namespace lamperti::detail {

/// Per-run state shared by the parallel and serial drivers.
struct Kernel {
    explicit Kernel(const SimConfig& cfg);
    TrajectorySummary run(std::uint64_t k) const;

    SimConfig cfg;
    double escape;
    std::optional<LawFactory> line;
    IncrementLaw plane;
};

}  // namespace lamperti::detail
