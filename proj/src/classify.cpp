// SPDX-License-Identifier: Apache-2.0
#include "lamperti/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lamperti/error.hpp"
#include "lamperti/specialfn.hpp"

namespace lamperti {
namespace {

using specialfn::cos_pi;
using specialfn::cot_pi;
using specialfn::kappa0;
using specialfn::kappa0_reduced;
using specialfn::kappa2;
using specialfn::sin_pi;

constexpr double kPi = std::numbers::pi;
constexpr double kEdge = 1e-6;

// c·K(0) in closed trigonometric form.
double threshold_term(const ChainSpec& s) {
    const double c = s.tail.c;
    switch (s.regime) {
        case Regime::HalfLine:
        case Regime::LineOut: return c * kPi / sin_pi(s.tail.alpha);
        case Regime::LineIn: return c * kPi * cot_pi(s.tail.beta);
        case Regime::LineBalanced: return c * kPi * cot_pi(0.5 * s.tail.alpha);
        case Regime::Plane: break;
    }
    throw DomainError("threshold_term: plane has no line threshold");
}

double plane_combination(const ChainSpec& s) {
    const auto& pl = *s.plane;
    return pl.p_radial * pl.c_radial + 2.0 * (1.0 - pl.p_radial) * pl.c_transverse * cos_pi(0.5 * s.tail.alpha);
}

Classification make(Phase phase, std::string tag, double deciding = 0.0) {
    Classification c;
    c.phase = phase;
    c.theorem_tag = std::move(tag);
    c.deciding_quantity = deciding;
    return c;
}

Classification recurrent(Phase phase, std::string tag, double q, Inclusivity inc, double deciding = 0.0) {
    Classification c = make(phase, std::move(tag), deciding);
    c.moment_exponent = q;
    c.boundary_inclusive = inc;
    return c;
}

Classification critical_recurrent(const ChainSpec& spec, std::string tag, double exponent, double deciding) {
    const NuStarResult r = nu_star(spec);
    Classification c = recurrent(Phase::NullRecurrent, std::move(tag), r.nu_star / exponent, Inclusivity::Unknown, deciding);
    c.nu_star = r.nu_star;
    return c;
}

Classification classify_plane(const ChainSpec& spec, double tie_tol) {
    const double d = plane_combination(spec);
    if (std::abs(d) <= tie_tol) return make(Phase::Critical, "plane: radial and transverse terms balance", d);
    if (d < 0.0) return make(Phase::Transient, "plane: transverse spreading dominates", d);
    return critical_recurrent(spec, "plane: radial pull dominates", spec.tail.alpha, d);
}

}  // namespace

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::PositiveRecurrent: return "PositiveRecurrent";
        case Phase::NullRecurrent: return "NullRecurrent";
        case Phase::TransientDirectional: return "TransientDirectional";
        case Phase::TransientOscillatory: return "TransientOscillatory";
        case Phase::Transient: return "Transient";
        case Phase::Critical: return "Critical";
    }
    return "unknown";
}

std::string_view to_string(Inclusivity i) {
    switch (i) {
        case Inclusivity::Finite: return "finite";
        case Inclusivity::Infinite: return "infinite";
        case Inclusivity::Unknown: return "unknown";
    }
    return "unknown";
}

bool is_recurrent(Phase p) { return p == Phase::PositiveRecurrent || p == Phase::NullRecurrent; }

Classification classify(const ChainSpec& spec, double tie_tol) {
    validate(spec);
    if (spec.regime == Regime::Plane) return classify_plane(spec, tie_tol);

    const Regime r = spec.regime;
    const double e = heavy_exponent(spec);
    const double crit = e - 1.0;
    const double gamma = spec.drift.gamma;
    const double b = spec.drift.b;
    const std::string name(to_string(r));

    // b = 0 gives μ ≡ 0, which behaves like a negligible drift.
    if (std::abs(b) <= tie_tol || gamma > crit + tie_tol) {
        switch (r) {
            case Regime::HalfLine:
            case Regime::LineOut:
                return recurrent(Phase::NullRecurrent, name + ": drift negligible, fluctuation-driven return", 1.0 / e,
                                 Inclusivity::Unknown);
            case Regime::LineIn:
                if (std::abs(e - 1.5) <= tie_tol)
                    return make(Phase::Critical, "uncovered: line_in with negligible drift at beta = 3/2");
                if (e > 1.5)
                    return recurrent(Phase::NullRecurrent, "line_in: negligible drift, beta > 3/2", (2.0 * e - 3.0) / e,
                                     Inclusivity::Unknown);
                return make(Phase::TransientOscillatory, "line_in: negligible drift, beta < 3/2");
            case Regime::LineBalanced:
                return recurrent(Phase::NullRecurrent, "line_balanced: drift negligible, two-sided fluctuations",
                                 1.0 - 1.0 / e, Inclusivity::Unknown);
            case Regime::Plane: break;
        }
    }

    if (gamma < crit - tie_tol) {
        if (b < 0.0)
            return recurrent(Phase::PositiveRecurrent, name + ": inward drift dominates", e / (gamma + 1.0),
                             Inclusivity::Infinite, b);
        const Phase p = r == Regime::HalfLine ? Phase::Transient : Phase::TransientDirectional;
        return make(p, name + ": outward drift dominates", b);
    }

    // γ = e - 1: drift and jumps are of the same order.
    const double d = b + threshold_term(spec);
    if (std::abs(d) <= tie_tol) {
        const std::string prefix = r == Regime::LineIn ? "uncovered: " : "";
        return make(Phase::Critical, prefix + name + ": critical drift at the threshold", d);
    }
    if (d < 0.0) return critical_recurrent(spec, name + ": critical drift below threshold", e, d);
    switch (r) {
        case Regime::HalfLine: return make(Phase::Transient, "half_line: critical drift above threshold", d);
        case Regime::LineOut:
            return make(Phase::TransientDirectional, "line_out: critical drift above threshold", d);
        case Regime::LineIn:
            return make(Phase::TransientOscillatory, "line_in: critical drift above threshold", d);
        case Regime::LineBalanced:
            return make(Phase::TransientOscillatory,
                        "line_balanced: critical drift above threshold (relies on an O(y^-delta) tail rate, exact "
                        "for Pareto laws)",
                        d);
        case Regime::Plane: break;
    }
    throw Error("classify: unreachable");
}

double nu_star_function(const ChainSpec& spec, double nu) {
    const double c = spec.tail.c;
    const double b = spec.drift.b;
    switch (spec.regime) {
        case Regime::HalfLine:
        case Regime::LineOut: return b + c * kappa0(spec.tail.alpha, nu);
        case Regime::LineIn: return b + c * kappa2(spec.tail.beta, nu);
        case Regime::LineBalanced: return b + c * (kappa0(spec.tail.alpha, nu) + kappa2(spec.tail.alpha, nu));
        case Regime::Plane: {
            const auto& pl = *spec.plane;
            const double a = spec.tail.alpha;
            return pl.p_radial * pl.c_radial * kappa0(a, nu) +
                   (1.0 - pl.p_radial) * pl.c_transverse * kappa0(0.5 * a, 0.5 * nu);
        }
    }
    throw Error("nu_star_function: unreachable");
}

double plane_equation_gamma_form(const ChainSpec& spec, double nu) {
    if (spec.regime != Regime::Plane || !spec.plane) throw DomainError("plane_equation_gamma_form: not a plane spec");
    const auto& pl = *spec.plane;
    const double a = spec.tail.alpha;
    return pl.p_radial * pl.c_radial * kappa0_reduced({a, nu}) +
           (1.0 - pl.p_radial) * pl.c_transverse * kappa0_reduced({0.5 * a, 0.5 * nu});
}

NuStarResult nu_star(const ChainSpec& spec) {
    validate(spec);
    double upper = 1.0;
    if (spec.regime != Regime::Plane) {
        const double e = heavy_exponent(spec);
        const bool b_zero = std::abs(spec.drift.b) <= kTieTol;
        if (!b_zero && std::abs(spec.drift.gamma - (e - 1.0)) > kTieTol)
            throw DomainError("nu_star: needs gamma = exponent - 1 or b = 0");
        upper = e;
    }

    // A pole hit moves the probe slightly instead of failing the solve.
    auto g = [&](double nu) {
        for (int k = 0; k < 8; ++k) {
            try {
                return nu_star_function(spec, nu);
            } catch (const PoleError&) {
                nu += 1e-9 * (k + 1);
            }
        }
        return nu_star_function(spec, nu);
    };

    double lo = kEdge;
    double hi = upper - kEdge;
    double glo = g(lo);
    double ghi = g(hi);
    NuStarResult out;
    out.bracket = {lo, hi};
    if ((glo > 0.0) == (ghi > 0.0) && glo != 0.0 && ghi != 0.0)
        throw NoRootError("nu_star: no sign change on the bracket (transient side)");

    int it = 0;
    const bool increasing = ghi > glo;
    while (it < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        ++it;
        if (gm == 0.0) {
            lo = hi = mid;
            glo = ghi = 0.0;
            break;
        }
        if ((gm < 0.0) == increasing) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    const bool take_lo = std::abs(glo) <= std::abs(ghi);
    out.nu_star = take_lo ? lo : hi;
    out.residual = std::abs(take_lo ? glo : ghi);
    out.iterations = it;
    return out;
}

MomentExponent moment_exponent(const ChainSpec& spec) {
    const Classification c = classify(spec);
    if (!is_recurrent(c.phase) || !c.moment_exponent)
        throw NotRecurrentError("moment_exponent: phase is " + std::string(to_string(c.phase)));
    return {*c.moment_exponent, c.boundary_inclusive};
}

}  // namespace lamperti
