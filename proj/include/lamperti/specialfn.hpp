// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>

namespace lamperti::specialfn {

/// Γ(z) for real z. Lanczos (g = 7, 9 terms) for z >= 0.5, reflection below.
/// Throws PoleError within 1e-12 of a non-positive integer.
double gamma_real(double z);

/// 1/Γ(z); entire, so it returns exactly 0 at the poles of Γ instead of throwing.
double rgamma(double z);

// log|Γ(z)|, usable where Γ itself overflows.
double log_gamma_abs(double z);

/// ψ(z) = d/dz log Γ(z). Upward recurrence to z >= 10, then the asymptotic
/// series; reflection for z <= 0.
double digamma(double z);

/// ψ'(z), same scheme as digamma.
double trigamma(double z);

// sin(πz), cos(πz), cot(πz) with exact argument reduction.
double sin_pi(double z);
double cos_pi(double z);
double cot_pi(double z);

/// Exponent/power pair fed to the drift coefficients. `exponent` is the tail
/// exponent of the heavy side (α for κ₀, β for κ₁ and κ₂) and `nu` the
/// power of the Lyapunov function.
struct KappaArgs {
    double exponent;
    double nu;
};

/// (1-ν)Γ(α-ν)Γ(1-α)/Γ(2-ν). Requires 0 < α < 2, α != 1, ν < α.
double kappa0(KappaArgs args);

/// Equivalent form Γ(α-ν)Γ(1-α)/Γ(1-ν), kept as an independent route.
double kappa0_reduced(KappaArgs args);

/// -(1-β+ν)Γ(ν+1)Γ(1-β)/Γ(2-β+ν). Requires 1 < β < 2, ν > -1.
double kappa1(KappaArgs args);

/// Γ(ν)(Γ(β-ν)/Γ(β) - (1-β+ν)Γ(1-β)/Γ(2-β+ν)). Requires 1 < β < 2,
/// -1 < ν < β. The bracket cancels to O(ν) near 0, so for |ν| < 1e-4 the
/// value is interpolated from the limit ψ(1-β) - ψ(β) = π cot(πβ) at ν = 0 and
/// direct evaluations at ν = ±2e-3, ±4e-3.
double kappa2(KappaArgs args);

inline double kappa0(double exponent, double nu) { return kappa0({exponent, nu}); }
inline double kappa1(double exponent, double nu) { return kappa1({exponent, nu}); }
inline double kappa2(double exponent, double nu) { return kappa2({exponent, nu}); }

/// B_x(p,q) = ∫₀ˣ u^{p-1}(1-u)^{q-1} du for p > 0 and any real q when x < 1.
/// x = 1 is accepted for q > 0 (the complete beta function).
double incomplete_beta_ext(double x, double p, double q);

/// Integrals with closed forms used by the drift expansions.
///
///   PositivePart  ∫₀^∞ u^{p-1}((1+u)^{q-1} - 1) du,           -1 < p < 0, p+q < 1
///   NegativeTo    ∫₀^{1-1/x} u^{p-1}((1-u)^{q-1} - 1) du,      p > -1, p != 0, q > -1, q != 0
///   NegativeFrom  ∫_{1+1/x}^∞ u^{p-1}(u-1)^{q-1} du,           q > -1, q != 0, p+q < 1
///   BetaConst     ∫₀^1 u^{p-1}((1-u)^{q-1} - 1) du,            p > -1, p != 0, q > 0
///   BetaLinear    ∫₀^1 u^{p-2}((1-u)^q + qu - 1) du,           p > -1, p ∉ {0,1}, q > -1
///
/// NegativeTo and NegativeFrom depend on x and are only asymptotic: the
/// closed form returns -x^{-q}/q + constant, dropping the o(1) remainder.
enum class ClosedForm { PositivePart, NegativeTo, NegativeFrom, BetaConst, BetaLinear };

std::string_view to_string(ClosedForm name);
std::optional<ClosedForm> closed_form_from_string(std::string_view name);

double closed_form_integral(ClosedForm name, double p, double q,
                            std::optional<double> x = std::nullopt);

/// The defining integral of `name`, evaluated by adaptive quadrature.
double closed_form_by_quadrature(ClosedForm name, double p, double q,
                                 std::optional<double> x = std::nullopt,
                                 double abs_tol = 1e-12);

namespace testing {
/// Multiplies every Γ evaluation by (1 + rel). Fault-injection hook for the
/// self-test; 0 restores exact behaviour.
void set_gamma_perturbation(double rel);
double gamma_perturbation();
}  // namespace testing

}  // namespace lamperti::specialfn
