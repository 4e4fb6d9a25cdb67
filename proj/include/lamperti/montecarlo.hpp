// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lamperti/increments.hpp"

namespace lamperti {

struct SimConfig {
    ChainSpec spec;
    double start = 50.0;    // x, or the first coordinate on the plane
    double start_y = 0.0;   // plane only
    double a = 10.0;        // stop when ξ <= a, |ξ| <= a or ‖ξ‖ <= a
    std::int64_t horizon = 100000;
    std::int64_t n_traj = 1000;
    std::uint64_t master_seed = 1;
    int workers = 1;
    /// Level M for the excursion flags; 0 selects 100·a.
    double escape_level = 0.0;
};

double effective_escape_level(const SimConfig& cfg);

struct TrajectorySummary {
    std::int64_t tau = 0;  // steps to the first entry into the stopping set, or horizon if censored
    bool censored = false;
    double max_excursion = 0.0;  // max ξ (norm on the plane)
    double min_excursion = 0.0;  // min ξ (norm on the plane)
    double final_x = 0.0;
    double final_y = 0.0;
    bool crossed_pos = false;  // ξ > M at some step
    bool crossed_neg = false;  // ξ < -M at some step
    std::int64_t first_exit = -1;        // first step with |ξ| > M
    std::int64_t last_sign_change = -1;  // last step where ξ changed sign
};

bool operator==(const TrajectorySummary& a, const TrajectorySummary& b);

/// Trajectory k draws from Stream(master_seed, k), so the output does not
/// depend on cfg.workers. OpenMP over trajectories.
std::vector<TrajectorySummary> run_trajectories(const SimConfig& cfg);

/// Single-threaded reference with the same per-trajectory kernel.
std::vector<TrajectorySummary> run_trajectories_serial(const SimConfig& cfg);

struct SurvivalEstimate {
    std::vector<std::int64_t> grid;
    std::vector<double> survival;  // fraction with τ > n
    double slope = 0.0;            // OLS slope of log S against log n
    double std_error = 0.0;        // grouped jackknife over trajectories
    double regression_std_error = 0.0;  // from the OLS residuals alone
    std::pair<std::int64_t, std::int64_t> fit_window{0, 0};
    std::size_t fit_points = 0;

    double exponent() const { return -slope; }
};

/// Survival curve on a geometric grid up to the horizon.
SurvivalEstimate survival_curve(const std::vector<TrajectorySummary>& runs, std::int64_t horizon);

/// Fits the survival curve over survival ∈ (10/n_traj, 0.9). Throws
/// InsufficientDataError with fewer than 4 usable points. std_error comes
/// from a 10-group jackknife over trajectories (residual-based below 100 runs).
SurvivalEstimate fit_survival(const std::vector<TrajectorySummary>& runs, std::int64_t horizon);
SurvivalEstimate estimate_passage_tail(const SimConfig& cfg);

struct PhaseFractions {
    double return_fraction = 0.0;
    double escape_fraction = 0.0;
    double oscillation_fraction = 0.0;
    double directional_fraction = 0.0;
    double escape_level = 0.0;
};

/// Labels each run: returned (τ within the horizon); escaped (never returned
/// and |final| > M); oscillatory-like (escaped, crossed both ±M and changed
/// sign after first exceeding M); directional-like (escaped otherwise).
PhaseFractions phase_fractions(const std::vector<TrajectorySummary>& runs, double escape_level);
PhaseFractions phase_diagnostic(SimConfig cfg, double escape_level);

struct MomentGrowth {
    double q = 0.0;
    std::vector<std::int64_t> caps;   // horizon/100, horizon/10, horizon
    std::vector<double> capped_mean;  // E[min(τ, n)^q]
    double last_ratio = 0.0;
    std::string verdict;  // "bounded", "growing" or "inconclusive"
};

std::vector<MomentGrowth> moment_growth(const std::vector<TrajectorySummary>& runs, std::int64_t horizon,
                                        const std::vector<double>& q_list);
std::vector<MomentGrowth> moment_diagnostic(const SimConfig& cfg, const std::vector<double>& q_list);

/// CSV writers; doubles are printed with %.17g so output is byte-stable.
void write_trajectories_csv(std::ostream& out, const std::vector<TrajectorySummary>& runs);
void write_survival_csv(std::ostream& out, const SurvivalEstimate& est);
std::string format_double(double v);

}  // namespace lamperti
