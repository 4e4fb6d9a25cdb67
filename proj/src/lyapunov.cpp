// SPDX-License-Identifier: Apache-2.0
#include "lamperti/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lamperti/error.hpp"
#include "lamperti/quadrature.hpp"
#include "lamperti/specialfn.hpp"

namespace lamperti {
namespace {

using specialfn::integrate_adaptive;

void check_index(const ChainSpec& spec, int i) {
    if (spec.regime == Regime::Plane) throw DomainError("Lyapunov drifts are defined for half-line and line regimes");
    if (spec.regime == Regime::HalfLine) {
        if (i != 0) throw DomainError("half_line uses f0 (i = 0)");
    } else if (i != 1 && i != 2) {
        throw DomainError("line regimes use f1 or f2 (i = 1, 2)");
    }
}

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

enum class Branch { Neg, Flat, Pos };  // z <= -1, |z| < 1, z >= 1

Branch branch_of(double z) { return z >= 1.0 ? Branch::Pos : z <= -1.0 ? Branch::Neg : Branch::Flat; }

// f_i'(z) on a known branch; f0 and f1 share a formula.
double fprime(int i, double nu, double z, Branch br) {
    switch (br) {
        case Branch::Pos: return nu * std::pow(z, nu - 1.0);
        case Branch::Neg: return i == 2 ? -nu * std::pow(-z, nu - 1.0) : 0.0;
        case Branch::Flat: return 0.0;
    }
    return 0.0;
}

double fprime(int i, double nu, double z) { return fprime(i, nu, z, branch_of(z)); }

// f_i'(x + s) - f_i'(x) with x + s on branch `br`, without cancellation when
// both points sit on the same power branch. Passing the branch keeps nodes
// that round onto a kink on the side their piece belongs to.
double fprime_diff(int i, double nu, double x, double s, Branch br) {
    const Branch bx = branch_of(x);
    if (br == bx && bx != Branch::Flat) {
        if (bx == Branch::Neg && i != 2) return 0.0;
        const double a = std::abs(x);
        const double t = x > 0.0 ? s : -s;
        return nu * sgn(x) * std::pow(a, nu - 1.0) * std::expm1((nu - 1.0) * std::log1p(t / a));
    }
    return fprime(i, nu, x + s, br) - fprime(i, nu, x, bx);
}

// ∫_0^∞ (f'(x + sign·y) - f'(x)) P[sign·θ > y] dy.
double side_integral(const IncrementLaw& law, int i, double nu, double x, int sign, double tol) {
    const double bound = sign > 0 ? law.bound_pos() : law.bound_neg();
    if (bound == 0.0) return 0.0;

    std::vector<double> cuts = {std::abs(x), 2.0 * std::abs(x)};
    for (double k : {1.0 - x, -1.0 - x}) cuts.push_back(sign > 0 ? k : -k);
    for (std::size_t c = 0; c < law.size(); ++c) {
        if (law[c].sign != sign) continue;
        cuts.push_back(law[c].kind == Component::Kind::HeavyPareto ? law[c].scale : law[c].width);
    }
    cuts.push_back(bound);
    std::vector<double> pts = {0.0};
    for (double k : cuts) {
        if (k > 0.0 && k <= bound && std::isfinite(k)) pts.push_back(k);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (std::isinf(bound)) pts.push_back(bound);

    const auto tail = [&](double y) { return sign > 0 ? law.tail_pos(y) : law.tail_neg(y); };
    const double piece_tol = tol / static_cast<double>(2 * pts.size());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double inner = std::isinf(pts[k + 1]) ? pts[k] + 1.0 : 0.5 * (pts[k] + pts[k + 1]);
        const Branch br = branch_of(x + sign * inner);
        const specialfn::Integrand g = [&](double y) { return fprime_diff(i, nu, x, sign * y, br) * tail(y); };
        total += integrate_adaptive(g, pts[k], pts[k + 1], piece_tol);
    }
    return total;
}

double drift_of_law(const IncrementLaw& law, int i, double nu, double x, double tol) {
    if (nu == 0.0) return 0.0;
    const double e_pos = law.heavy_exponent_pos();
    const double e_neg = law.heavy_exponent_neg();
    if (nu > 0.0 && e_pos > 0.0 && nu >= e_pos)
        throw DivergentError("drift integral diverges: nu >= exponent of the positive tail");
    if (nu > 0.0 && i == 2 && e_neg > 0.0 && nu >= e_neg)
        throw DivergentError("drift integral diverges: nu >= exponent of the negative tail");
    const int fi = i == 0 ? 1 : i;
    return fprime(fi, nu, x) * law.mean() + side_integral(law, fi, nu, x, 1, tol) -
           side_integral(law, fi, nu, x, -1, tol);
}

}  // namespace

double lyapunov_f(int i, double nu, double x) {
    switch (i) {
        case 0:
            if (x < 0.0) throw DomainError("f0 is defined on x >= 0");
            [[fallthrough]];
        case 1: return x >= 1.0 ? std::pow(x, nu) : 1.0;
        case 2: return std::abs(x) >= 1.0 ? std::pow(std::abs(x), nu) : 1.0;
        default: throw DomainError("Lyapunov index must be 0, 1 or 2");
    }
}

NuRange nu_range(const ChainSpec& spec, int i) {
    check_index(spec, i);
    const auto& t = spec.tail;
    switch (spec.regime) {
        case Regime::HalfLine:
        case Regime::LineOut: return {t.alpha - t.beta, t.alpha};
        case Regime::LineIn: return {i == 1 ? 0.0 : -1.0, t.beta};
        case Regime::LineBalanced: return {i == 1 ? 0.0 : -1.0, t.alpha};
        case Regime::Plane: break;
    }
    throw DomainError("nu_range: plane");
}

double drift_numeric(const ChainSpec& spec, int i, double nu, double x, double abs_tol) {
    check_index(spec, i);
    if (i == 0 && x < 0.0) throw DomainError("f0 drift needs x >= 0");
    return drift_of_law(build_law(spec, x), i, nu, x, abs_tol);
}

double drift_numeric_mirrored(const ChainSpec& spec, int i, double nu, double x, double abs_tol) {
    check_index(spec, i);
    if (spec.regime == Regime::HalfLine) throw DomainError("half_line has no mirrored drift");
    return drift_of_law(build_law(spec, -x).mirrored(), i, nu, x, abs_tol);
}

double expansion_coefficient(const ChainSpec& spec, int i, double nu) {
    check_index(spec, i);
    if (nu == 0.0) return 0.0;
    const NuRange r = nu_range(spec, i);
    if (!(nu > r.lo && nu < r.hi))
        throw DomainError("nu = " + std::to_string(nu) + " outside the expansion range (" + std::to_string(r.lo) +
                          ", " + std::to_string(r.hi) + ")");
    const double a = spec.tail.alpha;
    const double b = spec.tail.beta;
    switch (spec.regime) {
        case Regime::HalfLine:
        case Regime::LineOut: return nu * specialfn::kappa0(a, nu);
        case Regime::LineIn: return i == 1 ? specialfn::kappa1(b, nu) : nu * specialfn::kappa2(b, nu);
        case Regime::LineBalanced:
            return i == 1 ? nu * specialfn::kappa0(a, nu) + specialfn::kappa1(a, nu)
                          : nu * (specialfn::kappa0(a, nu) + specialfn::kappa2(a, nu));
        case Regime::Plane: break;
    }
    throw DomainError("expansion_coefficient: plane");
}

namespace {

double drift_term(const ChainSpec& spec, double nu, double x) {
    if (nu == 0.0) return 0.0;
    return nu * sgn(x) * std::pow(std::abs(x), nu - 1.0) * drift_target(spec, x);
}

}  // namespace

double drift_predicted(const ChainSpec& spec, int i, double nu, double x) {
    const double L = expansion_coefficient(spec, i, nu);
    if (i == 1 && !(x > 0.0)) throw DomainError("the f1 expansion is stated for x -> +infinity");
    if (i == 0 && x < 0.0) throw DomainError("f0 drift needs x >= 0");
    if (nu == 0.0) return 0.0;
    const double e = heavy_exponent(spec);
    return drift_term(spec, nu, x) + spec.tail.c * std::pow(std::abs(x), nu - e) * L;
}

DriftReport verify_expansion(const ChainSpec& spec, int i, double nu, const std::vector<double>& x_grid) {
    const double L = expansion_coefficient(spec, i, nu);
    const double e = heavy_exponent(spec);
    DriftReport rep;
    rep.x_grid = x_grid;
    rep.limit = spec.tail.c * L;
    const std::size_t n = x_grid.size();
    rep.numeric.assign(n, 0.0);
    rep.predicted.assign(n, 0.0);
    rep.normalized_error.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) rep.predicted[k] = drift_predicted(spec, i, nu, x_grid[k]);

    std::vector<std::string> failures(n);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < n; ++k) {
        try {
            const double x = x_grid[k];
            const double scale = std::pow(std::abs(x), nu - e);
            rep.numeric[k] = drift_numeric(spec, i, nu, x, 1e-10 * scale);
            rep.normalized_error[k] = nu == 0.0 ? 0.0 : (rep.numeric[k] - drift_term(spec, nu, x)) / scale - rep.limit;
        } catch (const std::exception& ex) {
            failures[k] = ex.what();
        }
    }
    for (const auto& f : failures) {
        if (!f.empty()) throw ConvergenceError("verify_expansion: " + f);
    }
    if (n > 0) {
        const double last = std::abs(rep.normalized_error.back());
        rep.converged = nu == 0.0 ? last == 0.0 : last < 0.05 * std::abs(rep.limit);
    }
    return rep;
}

namespace {

std::optional<double> try_drift(auto&& fn) {
    try {
        return fn();
    } catch (const DivergentError&) {
        return std::nullopt;
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

bool all_negative(const std::vector<CriteriaProbe>& probes, auto&& pick) {
    if (probes.empty()) return false;
    for (const auto& p : probes) {
        const std::optional<double> v = pick(p);
        if (!v || !(*v < 0.0)) return false;
    }
    return true;
}

}  // namespace

CriteriaRecord criteria_check(const ChainSpec& spec, double nu, const std::vector<double>& x_probe) {
    if (spec.regime == Regime::Plane) throw DomainError("criteria_check: plane regime has no line drift");
    validate(spec);
    CriteriaRecord rec;
    rec.nu = nu;
    for (double x : x_probe) {
        CriteriaProbe p;
        p.x = x;
        const double scale = std::pow(std::abs(x), nu - heavy_exponent(spec));
        const double tol = 1e-10 * std::min(1.0, scale);
        if (spec.regime == Regime::HalfLine) {
            p.d0 = try_drift([&] { return drift_numeric(spec, 0, nu, x, tol); });
        } else {
            p.d2_pos = try_drift([&] { return drift_numeric(spec, 2, nu, x, tol); });
            p.d2_neg = try_drift([&] { return drift_numeric(spec, 2, nu, -x, tol); });
            p.d1_pos = try_drift([&] { return drift_numeric(spec, 1, nu, x, tol); });
            p.d1_mirror = try_drift([&] { return drift_numeric_mirrored(spec, 1, nu, x, tol); });
        }
        rec.probes.push_back(p);
    }
    if (spec.regime == Regime::HalfLine) {
        rec.norm_drift_negative = all_negative(rec.probes, [](const CriteriaProbe& p) { return p.d0; });
    } else {
        rec.norm_drift_negative = all_negative(rec.probes, [](const CriteriaProbe& p) { return p.d2_pos; }) &&
                                  all_negative(rec.probes, [](const CriteriaProbe& p) { return p.d2_neg; });
        const bool right = all_negative(rec.probes, [](const CriteriaProbe& p) { return p.d1_pos; });
        const bool left = all_negative(rec.probes, [](const CriteriaProbe& p) { return p.d1_mirror; });
        rec.f1_negative_both_sides = right && left;
        rec.f1_negative_one_side = right != left;
    }
    return rec;
}

}  // namespace lamperti
