// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "lamperti/increments.hpp"

namespace lamperti {

/// f0, f1: x^ν for x >= 1, else 1.  f2: |x|^ν for |x| >= 1, else 1.
/// f0 is only defined on x >= 0.
double lyapunov_f(int i, double nu, double x);

/// Range of ν for which the expansion of D_i is asserted for this regime
/// (open interval; ν = 0 is always accepted as the trivial case).
struct NuRange {
    double lo;
    double hi;
};
NuRange nu_range(const ChainSpec& spec, int i);

/// E_x[f_i(x + θ) - f_i(x)] against the exact tails of build_law(spec, x),
/// written as f_i'(x)·E[θ] plus two tail integrals of f_i'(x ± y) - f_i'(x),
/// split at the kinks x ± y = ±1 and at the component scales. The HalfLine
/// clamp is built in: f0 equals 1 on [0,1) so clamping leaves it unchanged.
/// Throws DivergentError when ν reaches the exponent of a heavy side that
/// f_i grows into.
double drift_numeric(const ChainSpec& spec, int i, double nu, double x, double abs_tol = 1e-12);

/// Same, for the reflected chain -ξ observed through f_i at state x:
/// E[f_i(x - θ) - f_i(x)] with θ drawn from build_law(spec, -x).
double drift_numeric_mirrored(const ChainSpec& spec, int i, double nu, double x, double abs_tol = 1e-12);

/// Leading terms of the expansion:
///   ν sign(x)|x|^{ν-1} μ(x) + c|x|^{ν-e}·L
/// where L is νκ0 (HalfLine, LineOut), κ1 (LineIn, i=1), νκ2 (LineIn, i=2),
/// νκ0 + κ1 (LineBalanced, i=1), ν(κ0 + κ2) (LineBalanced, i=2).
/// i = 1 requires x > 0. Throws DomainError for incompatible (regime, i, ν).
double drift_predicted(const ChainSpec& spec, int i, double nu, double x);

/// The coefficient L above.
double expansion_coefficient(const ChainSpec& spec, int i, double nu);

struct DriftReport {
    std::vector<double> x_grid;
    std::vector<double> numeric;
    std::vector<double> predicted;
    std::vector<double> normalized_error;
    double limit = 0.0;  // c·L, the value normalized_error is measured against
    bool converged = false;
};

/// normalized_error = (numeric - drift term)/|x|^{ν-e} - c·L. Converged when
/// the last error is below 5% of |c·L| (or exactly 0 for ν = 0).
DriftReport verify_expansion(const ChainSpec& spec, int i, double nu, const std::vector<double>& x_grid);

struct CriteriaProbe {
    double x = 0.0;
    std::optional<double> d0;         // HalfLine
    std::optional<double> d2_pos;     // D2(+x)
    std::optional<double> d2_neg;     // D2(-x)
    std::optional<double> d1_pos;     // D1(+x)
    std::optional<double> d1_mirror;  // f1-drift of -ξ at +x, i.e. the left side
};

struct CriteriaRecord {
    double nu = 0.0;
    std::vector<CriteriaProbe> probes;
    /// D0 (HalfLine) or D2 on both sides negative at every probe.
    bool norm_drift_negative = false;
    /// D1 negative on both sides at every probe (oscillation pattern).
    bool f1_negative_both_sides = false;
    /// D1 negative on exactly one side at every probe (directional pattern).
    bool f1_negative_one_side = false;
};

/// Finite-x sign diagnostics of the semimartingale criteria. Entries whose ν
/// is outside the convergent range are left empty. Plane specs throw
/// DomainError.
CriteriaRecord criteria_check(const ChainSpec& spec, double nu, const std::vector<double>& x_probe);

}  // namespace lamperti
