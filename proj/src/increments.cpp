// SPDX-License-Identifier: Apache-2.0
#include "lamperti/increments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lamperti/error.hpp"

namespace lamperti {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

bool is_line(Regime r) { return r != Regime::HalfLine && r != Regime::Plane; }

double pareto_mean(double scale, double exponent) { return scale * exponent / (exponent - 1.0); }

Component pareto(int sign, double exponent, double scale, double weight) {
    Component c;
    c.kind = Component::Kind::HeavyPareto;
    c.sign = sign;
    c.exponent = exponent;
    c.scale = scale;
    c.weight = weight;
    return c;
}

Component uniform(int sign, double width, double weight) {
    Component c;
    c.kind = Component::Kind::BoundedUniform;
    c.sign = sign;
    c.width = width;
    c.weight = weight;
    return c;
}

}  // namespace

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::HalfLine: return "half_line";
        case Regime::LineOut: return "line_out";
        case Regime::LineIn: return "line_in";
        case Regime::LineBalanced: return "line_balanced";
        case Regime::Plane: return "plane";
    }
    return "unknown";
}

std::optional<Regime> regime_from_string(std::string_view name) {
    for (auto r : {Regime::HalfLine, Regime::LineOut, Regime::LineIn, Regime::LineBalanced, Regime::Plane}) {
        if (to_string(r) == name) return r;
    }
    return std::nullopt;
}

double heavy_exponent(const ChainSpec& spec) {
    return spec.regime == Regime::LineIn ? spec.tail.beta : spec.tail.alpha;
}

double drift_reference(const ChainSpec& spec) { return std::max(spec.tail.x0, 1.0); }

double drift_target(const ChainSpec& spec, double x) {
    if (spec.drift.b == 0.0) return 0.0;
    const double r = std::max(std::abs(x), drift_reference(spec));
    const double mag = spec.drift.gamma == 0.0 ? spec.drift.b : spec.drift.b * std::pow(r, -spec.drift.gamma);
    return x < 0.0 ? -mag : mag;
}

double pareto_scale(double c, double weight, double exponent) { return std::pow(c / weight, 1.0 / exponent); }

double Component::mean() const {
    if (kind == Kind::HeavyPareto) return sign * pareto_mean(scale, exponent);
    return sign * 0.5 * width;
}

double Component::tail(double y) const {
    if (kind == Kind::HeavyPareto) return y < scale ? 1.0 : std::pow(scale / y, exponent);
    if (y >= width) return 0.0;
    return 1.0 - y / width;
}

void IncrementLaw::add(const Component& c) {
    if (n_ == kMaxComponents) throw Error("IncrementLaw: too many components");
    comps_[n_++] = c;
}

double IncrementLaw::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i) m += comps_[i].weight * comps_[i].mean();
    return m;
}

double IncrementLaw::weight_sum() const {
    double w = 0.0;
    for (std::size_t i = 0; i < n_; ++i) w += comps_[i].weight;
    return w;
}

double IncrementLaw::tail_pos(double y) const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (comps_[i].sign > 0) t += comps_[i].weight * comps_[i].tail(y);
    }
    return t;
}

double IncrementLaw::tail_neg(double y) const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (comps_[i].sign < 0) t += comps_[i].weight * comps_[i].tail(y);
    }
    return t;
}

namespace {

double side_exponent(const IncrementLaw& law, int sign) {
    double e = 0.0;
    for (std::size_t i = 0; i < law.size(); ++i) {
        const auto& c = law[i];
        if (c.sign == sign && c.kind == Component::Kind::HeavyPareto && c.weight > 0.0) {
            e = e == 0.0 ? c.exponent : std::min(e, c.exponent);
        }
    }
    return e;
}

double side_bound(const IncrementLaw& law, int sign) {
    double b = 0.0;
    for (std::size_t i = 0; i < law.size(); ++i) {
        const auto& c = law[i];
        if (c.sign != sign || c.weight == 0.0) continue;
        if (c.kind == Component::Kind::HeavyPareto) return std::numeric_limits<double>::infinity();
        b = std::max(b, c.width);
    }
    return b;
}

}  // namespace

double IncrementLaw::heavy_exponent_pos() const { return side_exponent(*this, 1); }
double IncrementLaw::heavy_exponent_neg() const { return side_exponent(*this, -1); }
double IncrementLaw::bound_pos() const { return side_bound(*this, 1); }
double IncrementLaw::bound_neg() const { return side_bound(*this, -1); }

IncrementLaw IncrementLaw::mirrored() const {
    IncrementLaw out = *this;
    for (std::size_t i = 0; i < n_; ++i) out.comps_[i].sign = -comps_[i].sign;
    return out;
}

void validate(const ChainSpec& spec) {
    const auto& t = spec.tail;
    require(std::isfinite(t.alpha) && std::isfinite(t.beta) && std::isfinite(t.c) && std::isfinite(t.x0),
            "tail parameters must be finite");
    require(t.c > 0.0, "c must be positive");
    require(t.x0 >= 0.0, "x0 must be non-negative");
    require(std::isfinite(spec.drift.gamma) && spec.drift.gamma >= 0.0, "gamma must be non-negative");
    require(std::isfinite(spec.drift.b), "b must be finite");
    if (!(spec.p_heavy > 0.0 && spec.p_heavy < 1.0)) throw InfeasibleWeight("p_heavy must lie in (0,1)");

    switch (spec.regime) {
        case Regime::HalfLine:
        case Regime::LineOut:
            require(t.alpha > 1.0 && t.alpha < 2.0, "alpha must lie in (1,2)");
            require(t.beta > t.alpha, "beta must exceed alpha");
            break;
        case Regime::LineIn:
            require(t.beta > 1.0 && t.beta < 2.0, "beta must lie in (1,2)");
            require(t.alpha > t.beta, "alpha must exceed beta");
            break;
        case Regime::LineBalanced:
            require(t.alpha > 1.0 && t.alpha < 2.0, "alpha must lie in (1,2)");
            if (!(2.0 * spec.p_heavy < 1.0)) throw InfeasibleWeight("line_balanced needs p_heavy < 1/2");
            break;
        case Regime::Plane: {
            require(t.alpha > 1.0 && t.alpha < 2.0, "alpha must lie in (1,2)");
            require(spec.plane.has_value(), "plane regime needs plane parameters");
            require(spec.drift.b == 0.0, "plane regime needs b = 0");
            const auto& pl = *spec.plane;
            require(pl.p_radial > 0.0 && pl.p_radial < 1.0, "p_radial must lie in (0,1)");
            require(pl.c_radial > 0.0 && pl.c_transverse > 0.0, "plane tail constants must be positive");
            require(pl.beta_light > t.alpha, "beta_light must exceed alpha");
            if (pareto_scale(pl.c_radial, spec.p_heavy, t.alpha) < 1.0)
                throw InfeasibleWeight("radial Pareto scale (c_radial/p_heavy)^(1/alpha) is below 1");
            if (pareto_scale(pl.c_transverse, 0.5, t.alpha) < 1.0)
                throw InfeasibleWeight("transverse Pareto scale (2 c_transverse)^(1/alpha) is below 1");
            return;
        }
    }
    if (pareto_scale(t.c, spec.p_heavy, heavy_exponent(spec)) < 1.0)
        throw InfeasibleWeight("Pareto scale (c/p_heavy)^(1/exponent) is below 1");

    // The light mean is monotone in |x| beyond x_ref, so the ends of this grid
    // cover the worst case; the inner points guard against sign slips.
    const LawFactory f(spec, LawFactory::Unchecked{});
    const double x_ref = drift_reference(spec);
    for (double x : {x_ref, t.x0, 2.0 * t.x0, 10.0 * t.x0, 1e6}) {
        (void)f.at(x);
        if (is_line(spec.regime)) (void)f.at(-x);
    }
}

LawFactory::LawFactory(const ChainSpec& spec) : LawFactory(spec, Unchecked{}) { validate(spec); }

LawFactory::LawFactory(const ChainSpec& spec, Unchecked) : spec_(spec) {
    if (spec.regime == Regime::Plane) throw DomainError("LawFactory: plane regime uses build_plane_step_law");
    exponent_ = heavy_exponent(spec);
    y0_ = pareto_scale(spec.tail.c, spec.p_heavy, exponent_);
    heavy_mean_ = pareto_mean(y0_, exponent_);
    x_ref_ = drift_reference(spec);
}

IncrementLaw LawFactory::at(double x) const {
    const double mu = drift_target(spec_, x);
    const double p = spec_.p_heavy;
    IncrementLaw law;
    if (spec_.regime == Regime::LineBalanced) {
        const double m = mu / (1.0 - 2.0 * p);
        if (2.0 * std::abs(m) > y0_) throw InfeasibleDrift("drift tuner wider than the Pareto scale", x);
        law.add(pareto(1, exponent_, y0_, p));
        law.add(pareto(-1, exponent_, y0_, p));
        law.add(uniform(m < 0.0 ? -1 : 1, 2.0 * std::abs(m), 1.0 - 2.0 * p));
        return law;
    }
    const bool pos = spec_.regime == Regime::HalfLine || x >= 0.0;
    const int heavy_sign = (spec_.regime == Regime::LineIn) == pos ? -1 : 1;
    const double m = (p * heavy_mean_ - heavy_sign * mu) / (1.0 - p);
    if (!(m > 0.0)) throw InfeasibleDrift("light component mean must be positive", x);
    law.add(pareto(heavy_sign, exponent_, y0_, p));
    law.add(uniform(-heavy_sign, 2.0 * m, 1.0 - p));
    return law;
}

IncrementLaw build_law(const ChainSpec& spec, double x) {
    if (spec.regime == Regime::HalfLine && x < 0.0) throw DomainError("half_line state must be non-negative");
    return LawFactory(spec).at(x);
}

IncrementLaw build_plane_radial_law(const ChainSpec& spec) {
    validate(spec);
    if (spec.regime != Regime::Plane) throw DomainError("not a plane spec");
    const double a = spec.tail.alpha;
    const double p = spec.p_heavy;
    const double y0 = pareto_scale(spec.plane->c_radial, p, a);
    const double m = p * pareto_mean(y0, a) / (1.0 - p);
    IncrementLaw law;
    law.add(pareto(1, a, y0, p));
    law.add(uniform(-1, 2.0 * m, 1.0 - p));
    return law;
}

IncrementLaw build_plane_transverse_law(const ChainSpec& spec) {
    validate(spec);
    if (spec.regime != Regime::Plane) throw DomainError("not a plane spec");
    const double a = spec.tail.alpha;
    const double y0 = pareto_scale(spec.plane->c_transverse, 0.5, a);
    IncrementLaw law;
    law.add(pareto(1, a, y0, 0.5));
    law.add(pareto(-1, a, y0, 0.5));
    return law;
}

IncrementLaw build_plane_step_law(const ChainSpec& spec) {
    const IncrementLaw radial = build_plane_radial_law(spec);
    const IncrementLaw transverse = build_plane_transverse_law(spec);
    const double pr = spec.plane->p_radial;
    IncrementLaw law;
    for (std::size_t i = 0; i < radial.size(); ++i) {
        Component c = radial[i];
        c.weight *= pr;
        c.axis = Component::Axis::Radial;
        law.add(c);
    }
    for (std::size_t i = 0; i < transverse.size(); ++i) {
        Component c = transverse[i];
        c.weight *= 1.0 - pr;
        c.axis = Component::Axis::Transverse;
        law.add(c);
    }
    return law;
}

Draw sample_indexed(const IncrementLaw& law, UniformPair u) {
    std::size_t k = law.size() - 1;
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < law.size(); ++i) {
        cum += law[i].weight;
        if (u.u1 < cum) {
            k = i;
            break;
        }
    }
    const Component& c = law[k];
    if (c.kind == Component::Kind::HeavyPareto) {
        return {c.sign * c.scale * std::pow(1.0 - u.u2, -1.0 / c.exponent), k};
    }
    return {c.sign * c.width * u.u2, k};
}

double norm(Point2 p) { return std::hypot(p.x, p.y); }

double step(const LawFactory& laws, double x, Stream& s) {
    const double next = x + sample(laws.at(x), s);
    return laws.spec().regime == Regime::HalfLine ? std::max(0.0, next) : next;
}

double step(const ChainSpec& spec, double x, Stream& s) { return step(LawFactory(spec), x, s); }

Point2 step_plane(const IncrementLaw& step_law, Point2 x, UniformPair u) {
    const Draw d = sample_indexed(step_law, u);
    const double r = norm(x);
    const double ux = r > 0.0 ? x.x / r : 1.0;
    const double uy = r > 0.0 ? x.y / r : 0.0;
    if (step_law[d.component].axis == Component::Axis::Radial) return {x.x + d.value * ux, x.y + d.value * uy};
    return {x.x - d.value * uy, x.y + d.value * ux};
}

Point2 step(const ChainSpec& spec, Point2 x, Stream& s) {
    return step_plane(build_plane_step_law(spec), x, s.next_pair());
}

}  // namespace lamperti
