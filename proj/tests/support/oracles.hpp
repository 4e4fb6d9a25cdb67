// SPDX-License-Identifier: Apache-2.0
// Reference implementations for the tests. They share no numerical code with
// the library: Γ comes from the C library in long double, integrals from a
// graded Gauss-Legendre rule, roots from a dense scan plus bisection.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "lamperti/increments.hpp"
#include "lamperti/rng.hpp"

namespace oracle {

using ld = long double;
inline constexpr ld kPi = std::numbers::pi_v<long double>;

inline ld gamma(ld z) { return std::tgamma(z); }

inline ld kappa0(ld a, ld nu) { return (1 - nu) * gamma(a - nu) * gamma(1 - a) / gamma(2 - nu); }
inline ld kappa1(ld b, ld nu) { return -(1 - b + nu) * gamma(nu + 1) * gamma(1 - b) / gamma(2 - b + nu); }
inline ld kappa2(ld b, ld nu) {
    return gamma(nu) * (gamma(b - nu) / gamma(b) - (1 - b + nu) * gamma(1 - b) / gamma(2 - b + nu));
}

// 20-point Gauss-Legendre nodes on [-1, 1], by Newton iteration.
struct GaussLegendre {
    static constexpr int kN = 20;
    std::array<ld, kN> x{};
    std::array<ld, kN> w{};
    GaussLegendre() {
        for (int i = 0; i < kN; ++i) {
            ld z = std::cos(kPi * (i + 0.75L) / (kN + 0.5L));
            ld dp = 0;
            for (int it = 0; it < 100; ++it) {
                ld p0 = 1, p1 = z;
                for (int k = 2; k <= kN; ++k) {
                    const ld p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kN * (z * p1 - p0) / (z * z - 1);
                const ld dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-19L) break;
            }
            x[i] = z;
            w[i] = 2 / ((1 - z * z) * dp * dp);
        }
    }
};

inline const GaussLegendre& gl() {
    static const GaussLegendre rule;
    return rule;
}

// f(u, u - a, b - u): distances are passed so integrands can avoid cancellation.
using Integrand = std::function<ld(ld u, ld from_a, ld to_b)>;

// ∫_a^b f with panels graded geometrically towards both endpoints, down to
// 1e-200 of the interval. Integrable endpoint singularities u^{-1+0.1} leave
// an untreated remainder below 1e-20.
inline ld integrate_finite(const Integrand& f, ld a, ld b) {
    const ld len = b - a;
    const ld mid = len / 2;
    std::vector<std::pair<ld, ld>> panels;  // distances from a, for the lower half
    for (ld hi = mid; hi > 1e-200L * len; hi /= 4) panels.push_back({hi / 4, hi});
    ld total = 0;
    const auto& r = gl();
    auto panel = [&](ld lo, ld hi, bool from_left) {
        const ld c = (hi + lo) / 2;
        const ld h = (hi - lo) / 2;
        ld s = 0;
        for (int i = 0; i < GaussLegendre::kN; ++i) {
            const ld d = c + h * r.x[i];  // distance from the chosen endpoint
            s += r.w[i] * (from_left ? f(a + d, d, len - d) : f(b - d, len - d, d));
        }
        return s * h;
    };
    for (const auto& [lo, hi] : panels) {
        total += panel(lo, hi, true);
        total += panel(lo, hi, false);
    }
    return total;
}

// ∫_a^∞ f with geometric panels [a + 4^k, a + 4^{k+1}] out to 1e200, after a
// graded piece on [a, a + 1].
inline ld integrate_to_infinity(const Integrand& f, ld a) {
    ld total = integrate_finite(f, a, a + 1);
    const auto& r = gl();
    for (ld lo = 1; lo < 1e200L; lo *= 4) {
        const ld hi = lo * 4;
        const ld c = (hi + lo) / 2;
        const ld h = (hi - lo) / 2;
        ld s = 0;
        for (int i = 0; i < GaussLegendre::kN; ++i) {
            const ld d = c + h * r.x[i];
            s += r.w[i] * f(a + d, d, std::numeric_limits<ld>::infinity());
        }
        total += s * h;
    }
    return total;
}

// (1-u)^e - 1 with one_minus_u the exact distance to 1.
inline ld pow_m1(ld u, ld one_minus_u, ld e) {
    return u < 0.5L ? std::expm1(e * std::log1p(-u)) : std::pow(one_minus_u, e) - 1;
}

// The five closed-form integrals, written directly from their definitions.
inline ld positive_part(ld p, ld q) {
    return integrate_to_infinity([=](ld u, ld, ld) { return std::pow(u, p - 1) * std::expm1((q - 1) * std::log1p(u)); }, 0);
}
inline ld negative_to(ld p, ld q, ld x) {
    const ld gap = 1 / x;
    return integrate_finite(
        [=](ld u, ld, ld to_end) { return std::pow(u, p - 1) * pow_m1(u, gap + to_end, q - 1); }, 0, 1 - gap);
}
inline ld negative_from(ld p, ld q, ld x) {
    const ld gap = 1 / x;
    return integrate_to_infinity([=](ld u, ld from, ld) { return std::pow(gap + from, q - 1) * std::pow(u, p - 1); },
                                 1 + gap);
}
inline ld beta_const(ld p, ld q) {
    return integrate_finite([=](ld u, ld, ld to_one) { return std::pow(u, p - 1) * pow_m1(u, to_one, q - 1); },
                            0, 1);
}
inline ld beta_linear(ld p, ld q) {
    return integrate_finite(
        [=](ld u, ld, ld to_one) {
            // Series for small u, where (1-u)^q - 1 + qu cancels to O(u^2).
            ld bracket;
            if (u < 0.01L) {
                ld term = q * (q - 1) / 2 * u * u;
                bracket = term;
                for (int k = 2; k < 60; ++k) {
                    term *= (q - k) / (k + 1) * (-u);
                    bracket += term;
                }
            } else {
                bracket = std::pow(to_one, q) - 1 + q * u;
            }
            return std::pow(u, p - 2) * bracket;
        },
        0, 1);
}
inline ld incomplete_beta(ld x, ld p, ld q) {
    return integrate_finite([=](ld u, ld, ld) { return std::pow(u, p - 1) * std::pow(1 - u, q - 1); }, 0, x);
}

// All sign changes of g on (lo, hi), located on a grid of n cells then refined
// by bisection.
inline std::vector<double> brute_roots(const std::function<ld(ld)>& g, ld lo, ld hi, int n = 4000) {
    std::vector<double> roots;
    ld x0 = lo;
    ld g0 = g(x0);
    for (int k = 1; k <= n; ++k) {
        const ld x1 = lo + (hi - lo) * k / n;
        const ld g1 = g(x1);
        if (g0 == 0) {
            roots.push_back(static_cast<double>(x0));
        } else if ((g0 < 0) != (g1 < 0) && std::isfinite(g0) && std::isfinite(g1)) {
            ld a = x0, b = x1, ga = g0;
            for (int it = 0; it < 200 && b - a > 1e-18L; ++it) {
                const ld m = (a + b) / 2;
                const ld gm = g(m);
                if ((gm < 0) == (ga < 0)) {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            roots.push_back(static_cast<double>((a + b) / 2));
        }
        x0 = x1;
        g0 = g1;
    }
    return roots;
}

// ν* from the Γ-form equations. Returns nullopt when there is no root.
inline std::optional<double> nu_star(const lamperti::ChainSpec& s) {
    using lamperti::Regime;
    const ld c = s.tail.c;
    const ld b = s.drift.b;
    std::function<ld(ld)> g;
    ld hi = 1;
    switch (s.regime) {
        case Regime::HalfLine:
        case Regime::LineOut:
            g = [=](ld nu) { return b + c * kappa0(s.tail.alpha, nu); };
            hi = s.tail.alpha;
            break;
        case Regime::LineIn:
            g = [=](ld nu) { return b + c * kappa2(s.tail.beta, nu); };
            hi = s.tail.beta;
            break;
        case Regime::LineBalanced:
            g = [=](ld nu) { return b + c * (kappa0(s.tail.alpha, nu) + kappa2(s.tail.alpha, nu)); };
            hi = s.tail.alpha;
            break;
        case Regime::Plane: {
            const auto pl = *s.plane;
            const ld a = s.tail.alpha;
            g = [=](ld nu) {
                return pl.p_radial * pl.c_radial * gamma(a - nu) * gamma(1 - a) / gamma(1 - nu) +
                       (1 - pl.p_radial) * pl.c_transverse * gamma((a - nu) / 2) * gamma(1 - a / 2) /
                           gamma(1 - nu / 2);
            };
            break;
        }
    }
    // Skip Γ poles by staying off the exact grid points 0 and 1.
    const auto roots = brute_roots(g, 1e-6L, hi - 1e-6L, 4001);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

// Plain Monte Carlo estimate of E[f(x + θ) - f(x)] using the library sampler.
struct MeanEstimate {
    double mean;
    double std_error;
};

inline MeanEstimate mc_drift(const lamperti::IncrementLaw& law, const std::function<double(double)>& f, double x,
                             std::int64_t n, std::uint64_t seed) {
    lamperti::Stream s(seed, 0);
    const double fx = f(x);
    long double sum = 0, sum2 = 0;
    for (std::int64_t k = 0; k < n; ++k) {
        const long double d = f(x + lamperti::sample(law, s)) - fx;
        sum += d;
        sum2 += d * d;
    }
    const long double m = sum / n;
    const long double var = (sum2 / n - m * m) * n / (n - 1);
    return {static_cast<double>(m), static_cast<double>(std::sqrt(var / n))};
}

// Property-test parameter generator.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    double avoiding(double lo, double hi, std::initializer_list<double> bad, double gap) {
        for (;;) {
            const double v = uniform(lo, hi);
            bool ok = true;
            for (double b : bad) ok = ok && std::abs(v - b) >= gap;
            if (ok) return v;
        }
    }
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(eng_); }

private:
    std::mt19937_64 eng_;
};

}  // namespace oracle
