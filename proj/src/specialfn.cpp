// SPDX-License-Identifier: Apache-2.0
#include "lamperti/specialfn.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lamperti/error.hpp"
#include "lamperti/quadrature.hpp"

namespace lamperti::specialfn {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleTol = 1e-12;

std::atomic<double> g_gamma_perturbation{0.0};

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

bool near_pole(double z) {
    if (z > kPoleTol) return false;
    return std::abs(z - std::round(z)) < kPoleTol;
}

// Lanczos approximation, valid for z >= 0.5.
double lanczos(double z) {
    z -= 1.0;
    double x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const double t = z + 7.5;
    // Split the power to delay overflow for large z.
    const double half_pow = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * kPi) * half_pow * (half_pow * std::exp(-t)) * x;
}

double log_lanczos(double z) {
    z -= 1.0;
    double x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double gamma_exact(double z) {
    if (std::isnan(z)) return z;
    if (near_pole(z)) throw PoleError("gamma: pole at z = " + std::to_string(z));
    if (z < 0.5) return kPi / (sin_pi(z) * lanczos(1.0 - z));
    return lanczos(z);
}

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

// Σ_{k>=2} C(q,k)(-u)^k = (1-u)^q - 1 + qu, for small u.
double binomial_tail2(double u, double q) {
    double term = q * (q - 1.0) / 2.0 * u * u;
    double sum = term;
    for (int k = 2; k < 200; ++k) {
        term *= (q - k) / (k + 1.0) * (-u);
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// (1-u)^e - 1 where one_minus_u is the exact value of 1-u.
double pow_one_minus_m1(double u, double one_minus_u, double e) {
    if (u < 0.5) return std::expm1(e * std::log1p(-u));
    return std::pow(one_minus_u, e) - 1.0;
}

// u^e · factor without overflowing in u^e when u is tiny.
double scaled_pow(double u, double e, double factor) {
    if (factor == 0.0) return 0.0;
    return std::copysign(std::exp(e * std::log(u) + std::log(std::abs(factor))), factor);
}

double kappa2_direct(double beta, double nu) {
    const double b = gamma_real(beta - nu) * rgamma(beta) - gamma_real(1.0 - beta) * rgamma(1.0 - beta + nu);
    return gamma_real(nu) * b;
}

}  // namespace

double sin_pi(double z) {
    if (!std::isfinite(z)) return std::numeric_limits<double>::quiet_NaN();
    const double n = std::round(2.0 * z);
    const double r = z - 0.5 * n;
    const auto k = static_cast<long long>(std::fmod(n, 4.0) + 4.0) % 4;
    switch (k) {
        case 0: return std::sin(kPi * r);
        case 1: return std::cos(kPi * r);
        case 2: return -std::sin(kPi * r);
        default: return -std::cos(kPi * r);
    }
}

double cos_pi(double z) {
    if (!std::isfinite(z)) return std::numeric_limits<double>::quiet_NaN();
    const double n = std::round(2.0 * z);
    const double r = z - 0.5 * n;
    const auto k = static_cast<long long>(std::fmod(n, 4.0) + 4.0) % 4;
    switch (k) {
        case 0: return std::cos(kPi * r);
        case 1: return -std::sin(kPi * r);
        case 2: return -std::cos(kPi * r);
        default: return std::sin(kPi * r);
    }
}

double cot_pi(double z) {
    const double s = sin_pi(z);
    if (s == 0.0) throw PoleError("cot_pi: pole at z = " + std::to_string(z));
    return cos_pi(z) / s;
}

double gamma_real(double z) {
    const double g = gamma_exact(z);
    const double rel = g_gamma_perturbation.load(std::memory_order_relaxed);
    return rel == 0.0 ? g : g * (1.0 + rel);
}

double log_gamma_abs(double z) {
    if (std::isnan(z)) return z;
    if (near_pole(z)) throw PoleError("log_gamma_abs: pole at z = " + std::to_string(z));
    if (z < 0.5) return std::log(kPi / std::abs(sin_pi(z))) - log_lanczos(1.0 - z);
    return log_lanczos(z);
}

double rgamma(double z) {
    if (std::isnan(z)) return z;
    double r;
    if (z < 0.5) {
        r = sin_pi(z) * lanczos(1.0 - z) / kPi;
    } else {
        r = 1.0 / lanczos(z);
    }
    const double rel = g_gamma_perturbation.load(std::memory_order_relaxed);
    return rel == 0.0 ? r : r / (1.0 + rel);
}

double digamma(double z) {
    if (std::isnan(z)) return z;
    if (near_pole(z)) throw PoleError("digamma: pole at z = " + std::to_string(z));
    if (z <= 0.0) return digamma(1.0 - z) - kPi * cot_pi(z);
    double acc = 0.0;
    while (z < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const double w = 1.0 / (z * z);
    const double series =
        w * (1.0 / 12 + w * (-1.0 / 120 + w * (1.0 / 252 + w * (-1.0 / 240 + w * (1.0 / 132 + w * (-691.0 / 32760 + w / 12.0))))));
    return acc + std::log(z) - 0.5 / z - series;
}

double trigamma(double z) {
    if (std::isnan(z)) return z;
    if (near_pole(z)) throw PoleError("trigamma: pole at z = " + std::to_string(z));
    if (z <= 0.0) {
        const double s = sin_pi(z);
        return kPi * kPi / (s * s) - trigamma(1.0 - z);
    }
    double acc = 0.0;
    while (z < 10.0) {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    const double w = 1.0 / (z * z);
    const double series =
        w * (1.0 / 6 + w * (-1.0 / 30 + w * (1.0 / 42 + w * (-1.0 / 30 + w * (5.0 / 66 + w * (-691.0 / 2730 + w * 7.0 / 6))))));
    return acc + 1.0 / z + 0.5 * w + series / z;
}

double kappa0(KappaArgs args) {
    const double a = args.exponent;
    const double nu = args.nu;
    require(a > 0.0 && a < 2.0 && a != 1.0, "kappa0: exponent must lie in (0,1) or (1,2)");
    require(nu < a, "kappa0: nu must be below the exponent");
    return (1.0 - nu) * gamma_real(a - nu) * gamma_real(1.0 - a) * rgamma(2.0 - nu);
}

double kappa0_reduced(KappaArgs args) {
    const double a = args.exponent;
    const double nu = args.nu;
    require(a > 0.0 && a < 2.0 && a != 1.0, "kappa0: exponent must lie in (0,1) or (1,2)");
    require(nu < a, "kappa0: nu must be below the exponent");
    return gamma_real(a - nu) * gamma_real(1.0 - a) * rgamma(1.0 - nu);
}

double kappa1(KappaArgs args) {
    const double b = args.exponent;
    const double nu = args.nu;
    require(b > 1.0 && b < 2.0, "kappa1: exponent must lie in (1,2)");
    require(nu > -1.0, "kappa1: nu must exceed -1");
    return -(1.0 - b + nu) * gamma_real(nu + 1.0) * gamma_real(1.0 - b) * rgamma(2.0 - b + nu);
}

double kappa2(KappaArgs args) {
    const double b = args.exponent;
    const double nu = args.nu;
    require(b > 1.0 && b < 2.0, "kappa2: exponent must lie in (1,2)");
    require(nu > -1.0 && nu < b, "kappa2: nu must lie in (-1, exponent)");
    constexpr double kGuard = 1e-4;
    if (std::abs(nu) >= kGuard) return kappa2_direct(b, nu);

    // The bracket cancels to O(nu) near 0. Interpolate through the exact limit
    // at nu = 0 and direct values at +-h, +-2h, where cancellation costs only
    // about eps/h.
    constexpr double h = 2e-3;
    const double limit = digamma(1.0 - b) - digamma(b);
    const std::array<double, 5> xs = {-2 * h, -h, 0.0, h, 2 * h};
    const std::array<double, 5> ys = {kappa2_direct(b, -2 * h), kappa2_direct(b, -h), limit,
                                      kappa2_direct(b, h), kappa2_direct(b, 2 * h)};
    double out = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double l = 1.0;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j != i) l *= (nu - xs[j]) / (xs[i] - xs[j]);
        }
        out += l * ys[i];
    }
    return out;
}

double incomplete_beta_ext(double x, double p, double q) {
    require(p > 0.0, "incomplete_beta_ext: p must be positive");
    require(x >= 0.0, "incomplete_beta_ext: x must be non-negative");
    require(x < 1.0 || (x == 1.0 && q > 0.0), "incomplete_beta_ext: x = 1 requires q > 0");
    if (x == 0.0) return 0.0;
    const double gap = 1.0 - x;
    const EndpointIntegrand f = [&](double u, double from0, double to_x) {
        const double one_minus_u = u < 0.5 ? 1.0 - u : gap + to_x;
        return scaled_pow(from0, p - 1.0, std::pow(one_minus_u, q - 1.0));
    };
    return integrate_adaptive(f, 0.0, x, 0.0);
}

std::string_view to_string(ClosedForm name) {
    switch (name) {
        case ClosedForm::PositivePart: return "positive_part";
        case ClosedForm::NegativeTo: return "negative_to";
        case ClosedForm::NegativeFrom: return "negative_from";
        case ClosedForm::BetaConst: return "beta_const";
        case ClosedForm::BetaLinear: return "beta_linear";
    }
    return "unknown";
}

std::optional<ClosedForm> closed_form_from_string(std::string_view name) {
    for (auto c : {ClosedForm::PositivePart, ClosedForm::NegativeTo, ClosedForm::NegativeFrom,
                   ClosedForm::BetaConst, ClosedForm::BetaLinear}) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

namespace {

void check_closed_form_domain(ClosedForm name, double p, double q, std::optional<double> x) {
    switch (name) {
        case ClosedForm::PositivePart:
            require(p > -1.0 && p < 0.0 && p + q < 1.0, "positive_part: need -1 < p < 0 and p + q < 1");
            break;
        case ClosedForm::NegativeTo:
            require(p > -1.0 && p != 0.0 && q > -1.0 && q != 0.0, "negative_to: need p, q > -1 and nonzero");
            require(x.has_value() && *x > 1.0, "negative_to: need x > 1");
            break;
        case ClosedForm::NegativeFrom:
            require(q > -1.0 && q != 0.0 && p + q < 1.0, "negative_from: need q > -1, q != 0, p + q < 1");
            require(x.has_value() && *x > 0.0, "negative_from: need x > 0");
            break;
        case ClosedForm::BetaConst:
            require(p > -1.0 && p != 0.0 && q > 0.0, "beta_const: need p > -1, p != 0, q > 0");
            break;
        case ClosedForm::BetaLinear:
            require(p > -1.0 && p != 0.0 && p != 1.0 && q > -1.0, "beta_linear: need p > -1, p not 0 or 1, q > -1");
            break;
    }
}

}  // namespace

double closed_form_integral(ClosedForm name, double p, double q, std::optional<double> x) {
    check_closed_form_domain(name, p, q, x);
    switch (name) {
        case ClosedForm::PositivePart:
            return (1.0 - q) * gamma_real(1.0 - p - q) * gamma_real(p) * rgamma(2.0 - q);
        case ClosedForm::NegativeTo:
            return -std::pow(*x, -q) / q +
                   (p + q) * (p + q + 1.0) * gamma_real(p) * gamma_real(q) * rgamma(p + q + 2.0) - 1.0 / p;
        case ClosedForm::NegativeFrom:
            return -std::pow(*x, -q) / q + (1.0 - p) * gamma_real(1.0 - p - q) * gamma_real(q) * rgamma(2.0 - p);
        case ClosedForm::BetaConst:
            return (p + q) * gamma_real(p) * gamma_real(q) * rgamma(p + q + 1.0) - 1.0 / p;
        case ClosedForm::BetaLinear:
            return (p + q) * (p + q + 1.0) * gamma_real(p - 1.0) * gamma_real(q + 1.0) * rgamma(p + q + 2.0) + q / p -
                   1.0 / (p - 1.0);
    }
    throw DomainError("closed_form_integral: unknown form");
}

double closed_form_by_quadrature(ClosedForm name, double p, double q, std::optional<double> x, double abs_tol) {
    check_closed_form_domain(name, p, q, x);
    const double inf = std::numeric_limits<double>::infinity();
    switch (name) {
        case ClosedForm::PositivePart: {
            const EndpointIntegrand f = [&](double, double u, double) {
                return scaled_pow(u, p - 1.0, std::expm1((q - 1.0) * std::log1p(u)));
            };
            return integrate_adaptive(f, 0.0, inf, abs_tol);
        }
        case ClosedForm::NegativeTo: {
            const double gap = 1.0 / *x;
            const EndpointIntegrand f = [&](double, double u, double to_end) {
                return scaled_pow(u, p - 1.0, pow_one_minus_m1(u, gap + to_end, q - 1.0));
            };
            return integrate_adaptive(f, 0.0, 1.0 - gap, abs_tol);
        }
        case ClosedForm::NegativeFrom: {
            const double gap = 1.0 / *x;
            const EndpointIntegrand f = [&](double u, double from_start, double) {
                return scaled_pow(gap + from_start, q - 1.0, std::pow(u, p - 1.0));
            };
            return integrate_adaptive(f, 1.0 + gap, inf, abs_tol);
        }
        case ClosedForm::BetaConst: {
            const EndpointIntegrand f = [&](double, double u, double to_one) {
                return scaled_pow(u, p - 1.0, pow_one_minus_m1(u, to_one, q - 1.0));
            };
            return integrate_adaptive(f, 0.0, 1.0, abs_tol);
        }
        case ClosedForm::BetaLinear: {
            const EndpointIntegrand f = [&](double, double u, double to_one) {
                const double bracket =
                    u < 0.1 ? binomial_tail2(u, q) : pow_one_minus_m1(u, to_one, q) + q * u;
                return scaled_pow(u, p - 2.0, bracket);
            };
            return integrate_adaptive(f, 0.0, 1.0, abs_tol);
        }
    }
    throw DomainError("closed_form_by_quadrature: unknown form");
}

namespace testing {
void set_gamma_perturbation(double rel) { g_gamma_perturbation.store(rel, std::memory_order_relaxed); }
double gamma_perturbation() { return g_gamma_perturbation.load(std::memory_order_relaxed); }
}  // namespace testing

}  // namespace lamperti::specialfn
