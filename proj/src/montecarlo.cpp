// SPDX-License-Identifier: Apache-2.0
#include "lamperti/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lamperti/error.hpp"
#include "trajectory_kernel.hpp"

namespace lamperti {
namespace detail {

Kernel::Kernel(const SimConfig& c) : cfg(c), escape(effective_escape_level(c)) {
    if (cfg.horizon < 0) throw DomainError("horizon must be non-negative");
    if (cfg.n_traj < 0) throw DomainError("n_traj must be non-negative");
    if (cfg.spec.regime == Regime::Plane) {
        plane = build_plane_step_law(cfg.spec);
    } else {
        line.emplace(cfg.spec);
        if (cfg.spec.regime == Regime::HalfLine && cfg.start < 0.0)
            throw DomainError("half_line start must be non-negative");
    }
}

TrajectorySummary Kernel::run(std::uint64_t k) const {
    Stream s(cfg.master_seed, k);
    TrajectorySummary t;
    const Regime r = cfg.spec.regime;

    if (r == Regime::Plane) {
        Point2 x{cfg.start, cfg.start_y};
        double rad = norm(x);
        t.max_excursion = t.min_excursion = rad;
        std::int64_t n = 0;
        while (rad > cfg.a && n < cfg.horizon) {
            x = step_plane(plane, x, s.next_pair());
            rad = norm(x);
            ++n;
            t.max_excursion = std::max(t.max_excursion, rad);
            t.min_excursion = std::min(t.min_excursion, rad);
            if (t.first_exit < 0 && rad > escape) t.first_exit = n;
        }
        t.tau = n;
        t.censored = rad > cfg.a;
        t.crossed_pos = t.first_exit >= 0;
        t.final_x = x.x;
        t.final_y = x.y;
        return t;
    }

    const bool half = r == Regime::HalfLine;
    const auto stopped = [&](double x) { return half ? x <= cfg.a : std::abs(x) <= cfg.a; };
    double x = cfg.start;
    t.max_excursion = t.min_excursion = x;
    t.crossed_pos = x > escape;
    t.crossed_neg = x < -escape;
    if (std::abs(x) > escape) t.first_exit = 0;
    std::int64_t n = 0;
    while (!stopped(x) && n < cfg.horizon) {
        const double prev = x;
        x = step(*line, x, s);
        ++n;
        t.max_excursion = std::max(t.max_excursion, x);
        t.min_excursion = std::min(t.min_excursion, x);
        if (x > escape) t.crossed_pos = true;
        if (x < -escape) t.crossed_neg = true;
        if (t.first_exit < 0 && std::abs(x) > escape) t.first_exit = n;
        if ((x < 0.0) != (prev < 0.0)) t.last_sign_change = n;
    }
    t.tau = n;
    t.censored = !stopped(x);
    t.final_x = x;
    return t;
}

}  // namespace detail

double effective_escape_level(const SimConfig& cfg) {
    return cfg.escape_level > 0.0 ? cfg.escape_level : 100.0 * std::max(cfg.a, 1.0);
}

bool operator==(const TrajectorySummary& a, const TrajectorySummary& b) {
    return a.tau == b.tau && a.censored == b.censored && a.max_excursion == b.max_excursion &&
           a.min_excursion == b.min_excursion && a.final_x == b.final_x && a.final_y == b.final_y &&
           a.crossed_pos == b.crossed_pos && a.crossed_neg == b.crossed_neg && a.first_exit == b.first_exit &&
           a.last_sign_change == b.last_sign_change;
}

std::vector<TrajectorySummary> run_trajectories(const SimConfig& cfg) {
    const detail::Kernel kernel(cfg);
    std::vector<TrajectorySummary> out(static_cast<std::size_t>(cfg.n_traj));
    const auto n = static_cast<std::int64_t>(out.size());
    const int workers = std::max(cfg.workers, 1);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 16)
    for (std::int64_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = kernel.run(static_cast<std::uint64_t>(k));
    return out;
}

namespace {

std::vector<std::int64_t> geometric_grid(std::int64_t horizon) {
    std::vector<std::int64_t> g;
    double v = 1.0;
    while (v <= static_cast<double>(horizon)) {
        const auto n = static_cast<std::int64_t>(std::llround(v));
        if (g.empty() || n != g.back()) g.push_back(n);
        v *= 1.2;
    }
    if (horizon >= 1 && (g.empty() || g.back() != horizon)) g.push_back(horizon);
    return g;
}

}  // namespace

SurvivalEstimate survival_curve(const std::vector<TrajectorySummary>& runs, std::int64_t horizon) {
    SurvivalEstimate est;
    est.grid = geometric_grid(horizon);
    std::vector<std::int64_t> taus;
    taus.reserve(runs.size());
    for (const auto& r : runs) taus.push_back(r.censored ? horizon + 1 : r.tau);
    std::sort(taus.begin(), taus.end());
    const double total = static_cast<double>(runs.size());
    for (std::int64_t n : est.grid) {
        const auto above = taus.end() - std::upper_bound(taus.begin(), taus.end(), n);
        est.survival.push_back(total > 0 ? static_cast<double>(above) / total : 0.0);
    }
    return est;
}

namespace {

struct LineFit {
    double slope = 0.0;
    double residual_se = 0.0;
    std::size_t points = 0;
    std::pair<std::int64_t, std::int64_t> window{0, 0};
};

// OLS of log S on log n over survival ∈ (10/n_runs, 0.9).
LineFit fit_window(const SurvivalEstimate& curve, std::size_t n_runs) {
    const double floor = 10.0 / static_cast<double>(std::max<std::size_t>(n_runs, 1));
    std::vector<double> lx;
    std::vector<double> ly;
    LineFit fit;
    for (std::size_t k = 0; k < curve.grid.size(); ++k) {
        const double s = curve.survival[k];
        if (s > floor && s < 0.9) {
            if (lx.empty()) fit.window.first = curve.grid[k];
            fit.window.second = curve.grid[k];
            lx.push_back(std::log(static_cast<double>(curve.grid[k])));
            ly.push_back(std::log(s));
        }
    }
    fit.points = lx.size();
    if (lx.size() < 4) throw InsufficientDataError("survival fit needs at least 4 points inside the window");
    const double m = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
    }
    fit.slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        const double res = ly[k] - (my + fit.slope * (lx[k] - mx));
        ssr += res * res;
    }
    fit.residual_se = std::sqrt(ssr / (m - 2.0) / sxx);
    return fit;
}

constexpr std::size_t kJackknifeGroups = 10;

}  // namespace

SurvivalEstimate fit_survival(const std::vector<TrajectorySummary>& runs, std::int64_t horizon) {
    SurvivalEstimate est = survival_curve(runs, horizon);
    const LineFit full = fit_window(est, runs.size());
    est.slope = full.slope;
    est.regression_std_error = full.residual_se;
    est.fit_window = full.window;
    est.fit_points = full.points;

    // Grouped jackknife over runs k mod 10. The survival points share
    // trajectories, so the regression residuals understate the sampling error.
    est.std_error = full.residual_se;
    if (runs.size() >= 10 * kJackknifeGroups) {
        std::vector<double> slopes;
        for (std::size_t g = 0; g < kJackknifeGroups; ++g) {
            std::vector<TrajectorySummary> kept;
            kept.reserve(runs.size());
            for (std::size_t k = 0; k < runs.size(); ++k) {
                if (k % kJackknifeGroups != g) kept.push_back(runs[k]);
            }
            try {
                slopes.push_back(fit_window(survival_curve(kept, horizon), kept.size()).slope);
            } catch (const InsufficientDataError&) {
                slopes.clear();
                break;
            }
        }
        if (slopes.size() == kJackknifeGroups) {
            double mean = 0.0;
            for (double s : slopes) mean += s;
            mean /= static_cast<double>(slopes.size());
            double ss = 0.0;
            for (double s : slopes) ss += (s - mean) * (s - mean);
            const double g = static_cast<double>(kJackknifeGroups);
            est.std_error = std::sqrt((g - 1.0) / g * ss);
        }
    }
    return est;
}

SurvivalEstimate estimate_passage_tail(const SimConfig& cfg) { return fit_survival(run_trajectories(cfg), cfg.horizon); }

PhaseFractions phase_fractions(const std::vector<TrajectorySummary>& runs, double escape_level) {
    PhaseFractions f;
    f.escape_level = escape_level;
    if (runs.empty()) return f;
    std::size_t ret = 0, esc = 0, osc = 0, dir = 0;
    for (const auto& r : runs) {
        if (!r.censored) {
            ++ret;
            continue;
        }
        if (std::hypot(r.final_x, r.final_y) <= escape_level) continue;
        ++esc;
        const bool oscillating =
            r.crossed_pos && r.crossed_neg && r.first_exit >= 0 && r.last_sign_change > r.first_exit;
        ++(oscillating ? osc : dir);
    }
    const double n = static_cast<double>(runs.size());
    f.return_fraction = static_cast<double>(ret) / n;
    f.escape_fraction = static_cast<double>(esc) / n;
    f.oscillation_fraction = static_cast<double>(osc) / n;
    f.directional_fraction = static_cast<double>(dir) / n;
    return f;
}

PhaseFractions phase_diagnostic(SimConfig cfg, double escape_level) {
    if (!(escape_level > cfg.a)) throw DomainError("phase_diagnostic: escape level must exceed a");
    cfg.escape_level = escape_level;
    return phase_fractions(run_trajectories(cfg), escape_level);
}

std::vector<MomentGrowth> moment_growth(const std::vector<TrajectorySummary>& runs, std::int64_t horizon,
                                        const std::vector<double>& q_list) {
    std::vector<MomentGrowth> out;
    const std::vector<std::int64_t> caps = {std::max<std::int64_t>(horizon / 100, 1),
                                            std::max<std::int64_t>(horizon / 10, 1), std::max<std::int64_t>(horizon, 1)};
    for (double q : q_list) {
        MomentGrowth g;
        g.q = q;
        g.caps = caps;
        for (std::int64_t cap : caps) {
            double sum = 0.0;
            for (const auto& r : runs) {
                const std::int64_t t = r.censored ? cap : std::min(r.tau, cap);
                sum += std::pow(static_cast<double>(t), q);
            }
            g.capped_mean.push_back(runs.empty() ? 0.0 : sum / static_cast<double>(runs.size()));
        }
        const double prev = g.capped_mean[1];
        g.last_ratio = prev > 0.0 ? g.capped_mean[2] / prev : 1.0;
        g.verdict = g.last_ratio < 1.1 ? "bounded" : g.last_ratio > 1.5 ? "growing" : "inconclusive";
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<MomentGrowth> moment_diagnostic(const SimConfig& cfg, const std::vector<double>& q_list) {
    return moment_growth(run_trajectories(cfg), cfg.horizon, q_list);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectories_csv(std::ostream& out, const std::vector<TrajectorySummary>& runs) {
    out << "index,tau,censored,max_excursion,min_excursion,final_x,final_y,crossed_pos,crossed_neg,first_exit,"
           "last_sign_change\n";
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& r = runs[k];
        out << k << ',' << r.tau << ',' << (r.censored ? 1 : 0) << ',' << format_double(r.max_excursion) << ','
            << format_double(r.min_excursion) << ',' << format_double(r.final_x) << ',' << format_double(r.final_y)
            << ',' << (r.crossed_pos ? 1 : 0) << ',' << (r.crossed_neg ? 1 : 0) << ',' << r.first_exit << ','
            << r.last_sign_change << '\n';
    }
}

void write_survival_csv(std::ostream& out, const SurvivalEstimate& est) {
    out << "n,survival\n";
    for (std::size_t k = 0; k < est.grid.size(); ++k) out << est.grid[k] << ',' << format_double(est.survival[k]) << '\n';
}

}  // namespace lamperti
