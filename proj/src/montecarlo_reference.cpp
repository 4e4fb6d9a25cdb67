// SPDX-License-Identifier: Apache-2.0
#include "lamperti/montecarlo.hpp"
#include "trajectory_kernel.hpp"

namespace lamperti {

std::vector<TrajectorySummary> run_trajectories_serial(const SimConfig& cfg) {
    const detail::Kernel kernel(cfg);
    std::vector<TrajectorySummary> out;
    out.reserve(static_cast<std::size_t>(cfg.n_traj));
    for (std::int64_t k = 0; k < cfg.n_traj; ++k) out.push_back(kernel.run(static_cast<std::uint64_t>(k)));
    return out;
}

}  // namespace lamperti
