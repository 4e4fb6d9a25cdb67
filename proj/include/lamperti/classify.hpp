// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "lamperti/increments.hpp"

namespace lamperti {

enum class Phase { PositiveRecurrent, NullRecurrent, TransientDirectional, TransientOscillatory, Transient, Critical };

/// Whether E[τ^q] at q = q_crit itself is finite, infinite, or not decided.
enum class Inclusivity { Finite, Infinite, Unknown };

std::string_view to_string(Phase p);
std::string_view to_string(Inclusivity i);
bool is_recurrent(Phase p);

inline constexpr double kTieTol = 1e-9;

struct Classification {
    Phase phase = Phase::Critical;
    std::optional<double> moment_exponent;
    Inclusivity boundary_inclusive = Inclusivity::Unknown;
    std::string theorem_tag;
    std::optional<double> nu_star;
    /// The signed quantity the final branch compared with 0 (drift minus
    /// threshold, or the plane combination). 0 when no comparison was made.
    double deciding_quantity = 0.0;
};

Classification classify(const ChainSpec& spec, double tie_tol = kTieTol);

struct NuStarResult {
    double nu_star = 0.0;
    std::pair<double, double> bracket;
    double residual = 0.0;
    int iterations = 0;
};

/// g(ν) whose root is ν*: b + c·K(ν) on the line (K = κ₀, κ₂ or κ₀ + κ₂ by
/// regime) and p^R c^R κ₀(α,ν) + p^T c^T κ₀(α/2,ν/2) on the plane.
double nu_star_function(const ChainSpec& spec, double nu);

/// Same plane function written with the Γ-ratio form Γ(α-ν)Γ(1-α)/Γ(1-ν).
double plane_equation_gamma_form(const ChainSpec& spec, double nu);

/// Bisection for ν* on [1e-6, e - 1e-6] (e the heavy exponent; e = 1 on the
/// plane). Requires the critical drift exponent γ = e - 1 or b = 0 (line
/// regimes). Throws NoRootError when g keeps one sign on the bracket, which
/// is the transient side.
NuStarResult nu_star(const ChainSpec& spec);

struct MomentExponent {
    double q_crit;
    Inclusivity inclusivity;
};

/// Throws NotRecurrentError unless classify gives a recurrent phase.
MomentExponent moment_exponent(const ChainSpec& spec);

}  // namespace lamperti
