// SPDX-License-Identifier: Apache-2.0
#include "lamperti/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lamperti/error.hpp"

namespace lamperti::specialfn {
namespace {

constexpr double kTMax = 6.56;
constexpr int kMinLevel = 3;
constexpr int kMaxLevel = 9;
constexpr int kMaxDepth = 60;
constexpr int kPanelBudget = 2000;
constexpr double kRelFloor = 1e-14;
constexpr double kNoiseFactor = 64.0;

struct Panel {
    double a;
    double b;
    // Distances from the panel ends to the ends of the whole range.
    double lead;   // a - a_global
    double trail;  // b_global - b
};

struct PanelResult {
    double value;
    bool ok;
};

// One tanh-sinh node pair at abscissa t > 0 (or the centre when t == 0).
// `mag` accumulates the same sum with |f|, which bounds the rounding noise.
double node_sum(const EndpointIntegrand& f, const Panel& p, double t, bool& finite, double& mag) {
    const double half = 0.5 * (p.b - p.a);
    const double mid = p.a + half;
    if (t == 0.0) {
        const double w = half * std::numbers::pi / 2.0;
        const double v = f(mid, p.lead + half, p.trail + half);
        if (!std::isfinite(v)) finite = false;
        mag += w * std::abs(v);
        return w * v;
    }
    const double s = std::numbers::pi / 2.0 * std::sinh(t);
    const double e2 = std::exp(-2.0 * s);
    const double comp = 2.0 * e2 / (1.0 + e2);  // 1 - tanh(s)
    const double sech = 2.0 * std::exp(-s) / (1.0 + e2);
    const double w = half * std::numbers::pi / 2.0 * std::cosh(t) * sech * sech;
    const double d = half * comp;  // distance of the outer nodes to the panel ends
    if (w == 0.0 || d == 0.0) return 0.0;
    const double far = 2.0 * half - d;

    double total = 0.0;
    const double v_hi = f(p.b - d, p.lead + far, p.trail + d);
    const double v_lo = f(p.a + d, p.lead + d, p.trail + far);
    if (!std::isfinite(v_hi) || !std::isfinite(v_lo)) finite = false;
    total += w * (v_hi + v_lo);
    mag += w * (std::abs(v_hi) + std::abs(v_lo));
    return total;
}

PanelResult tanh_sinh(const EndpointIntegrand& f, const Panel& p, double abs_tol) {
    bool finite = true;
    double mag = 0.0;
    // Level 0: integer abscissae.
    double sum = node_sum(f, p, 0.0, finite, mag);
    for (double t = 1.0; t <= kTMax; t += 1.0) sum += node_sum(f, p, t, finite, mag);
    double h = 1.0;
    double prev = h * sum;
    if (!finite) return {prev, false};

    for (int level = 1; level <= kMaxLevel; ++level) {
        h *= 0.5;
        for (double t = h; t <= kTMax; t += 2.0 * h) sum += node_sum(f, p, t, finite, mag);
        if (!finite) return {h * sum, false};
        const double est = h * sum;
        if (level >= kMinLevel) {
            const double noise = kNoiseFactor * std::numeric_limits<double>::epsilon() * h * mag;
            const double tol = std::max({abs_tol, kRelFloor * std::abs(est), noise});
            if (std::abs(est - prev) <= tol) return {est, true};
        }
        prev = est;
    }
    return {prev, false};
}

struct Driver {
    const EndpointIntegrand& f;
    int panels = 0;

    double run(const Panel& p, double abs_tol, int depth) {
        if (++panels > kPanelBudget) throw ConvergenceError("integrate_adaptive: panel budget exhausted");
        const PanelResult r = tanh_sinh(f, p, abs_tol);
        if (r.ok) return r.value;
        if (depth >= kMaxDepth) throw ConvergenceError("integrate_adaptive: bisection depth exceeded");
        const double m = p.a + 0.5 * (p.b - p.a);
        if (!(m > p.a && m < p.b)) throw ConvergenceError("integrate_adaptive: panel collapsed");
        const Panel left{p.a, m, p.lead, p.trail + (p.b - m)};
        const Panel right{m, p.b, p.lead + (m - p.a), p.trail};
        return run(left, 0.5 * abs_tol, depth + 1) + run(right, 0.5 * abs_tol, depth + 1);
    }
};

}  // namespace

double integrate_adaptive(const EndpointIntegrand& f, double a, double b, double abs_tol) {
    if (std::isnan(a) || std::isnan(b)) throw DomainError("integrate_adaptive: NaN limit");
    if (a == b) return 0.0;
    if (std::isinf(a)) throw DomainError("integrate_adaptive: lower limit must be finite");
    if (b < a) return -integrate_adaptive(f, b, a, abs_tol);
    abs_tol = std::max(abs_tol, 0.0);

    if (std::isinf(b)) {
        // u = a + L t/(1-t), du = L/(1-t)^2 dt.
        const double L = std::max(1.0, std::abs(a));
        const EndpointIntegrand g = [&](double, double t, double one_minus_t) {
            const double r = t / one_minus_t;
            const double jac = L / (one_minus_t * one_minus_t);
            if (!std::isfinite(jac) || !std::isfinite(r)) return 0.0;
            return f(a + L * r, L * r, std::numeric_limits<double>::infinity()) * jac;
        };
        Driver d{g};
        return d.run(Panel{0.0, 1.0, 0.0, 0.0}, abs_tol, 0);
    }
    Driver d{f};
    return d.run(Panel{a, b, 0.0, 0.0}, abs_tol, 0);
}

double integrate_adaptive(const Integrand& f, double a, double b, double abs_tol) {
    const EndpointIntegrand g = [&](double x, double, double) { return f(x); };
    return integrate_adaptive(g, a, b, abs_tol);
}

}  // namespace lamperti::specialfn
