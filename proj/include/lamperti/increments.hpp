// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "lamperti/rng.hpp"

namespace lamperti {

enum class Regime { HalfLine, LineOut, LineIn, LineBalanced, Plane };

std::string_view to_string(Regime r);
std::optional<Regime> regime_from_string(std::string_view name);

/// alpha and beta swap roles by regime: HalfLine/LineOut use alpha for the
/// heavy outward tail, LineIn uses beta for the heavy inward tail, and
/// LineBalanced has alpha on both sides. The other exponent only bounds the
/// light side, which is bounded here, so it enters through range checks alone.
struct TailParams {
    double alpha = 1.5;
    double beta = 3.0;
    double c = 1.0;
    double x0 = 1.0;
};

/// Drift target μ(x) = sign(x)·b·|x|^{-γ} (evaluated at max(|x|, x_ref)).
struct DriftParams {
    double gamma = 0.0;
    double b = 0.0;
};

struct PlaneParams {
    double p_radial = 0.5;
    double c_radial = 1.0;
    double c_transverse = 1.0;
    double beta_light = 2.0;
};

struct ChainSpec {
    Regime regime = Regime::HalfLine;
    TailParams tail;
    DriftParams drift;
    double p_heavy = 0.25;
    std::optional<PlaneParams> plane;
};

/// Checks parameter ranges and drift feasibility. Throws DomainError,
/// InfeasibleWeight or InfeasibleDrift.
void validate(const ChainSpec& spec);

/// Exponent of the heavy side: beta for LineIn, alpha otherwise.
double heavy_exponent(const ChainSpec& spec);

/// max(x0, 1): below this the drift target is frozen at its value here.
double drift_reference(const ChainSpec& spec);

/// μ(x) the law is tuned to.
double drift_target(const ChainSpec& spec, double x);

/// Scale y0 = (c/weight)^{1/exponent} of a Pareto component with tail weight·(y0/y)^exponent = c·y^{-exponent}.
double pareto_scale(double c, double weight, double exponent);

struct Component {
    enum class Kind { HeavyPareto, BoundedUniform };
    enum class Axis { Radial, Transverse };

    Kind kind = Kind::BoundedUniform;
    int sign = 1;
    double exponent = 0.0;  // HeavyPareto
    double scale = 0.0;     // HeavyPareto: y0
    double width = 0.0;     // BoundedUniform: support sign·(0, width)
    double weight = 0.0;
    Axis axis = Axis::Radial;  // only read by the plane step

    double mean() const;
    /// P[sign·θ > y] for y >= 0, i.e. the tail on this component's own side.
    double tail(double y) const;
};

class IncrementLaw {
public:
    static constexpr std::size_t kMaxComponents = 4;

    void add(const Component& c);
    std::size_t size() const { return n_; }
    const Component& operator[](std::size_t i) const { return comps_[i]; }

    double mean() const;
    double weight_sum() const;
    /// P[θ > y], y >= 0.
    double tail_pos(double y) const;
    /// P[θ < -y], y >= 0.
    double tail_neg(double y) const;
    /// Largest heavy exponent on each side (0 when that side is bounded).
    double heavy_exponent_pos() const;
    double heavy_exponent_neg() const;
    /// Finite support bound on each side when that side has no Pareto part.
    double bound_pos() const;
    double bound_neg() const;

    /// Law of -θ.
    IncrementLaw mirrored() const;

private:
    std::array<Component, kMaxComponents> comps_{};
    std::size_t n_ = 0;
};

/// Law of the increment from state x (line regimes; x >= 0 for HalfLine).
/// The returned law ignores the HalfLine clamp at 0. Validates the spec on
/// every call; use LawFactory in loops.
IncrementLaw build_law(const ChainSpec& spec, double x);

/// Validated spec with the x-independent pieces of build_law precomputed.
class LawFactory {
public:
    explicit LawFactory(const ChainSpec& spec);
    IncrementLaw at(double x) const;
    const ChainSpec& spec() const { return spec_; }

private:
    struct Unchecked {};
    LawFactory(const ChainSpec& spec, Unchecked);
    friend void validate(const ChainSpec& spec);

    ChainSpec spec_;
    double exponent_;
    double y0_;
    double heavy_mean_;  // mean of one Pareto component, y0·e/(e-1)
    double x_ref_;
};

/// Plane regime: θ^R (heavy positive, mean zero) and θ^T (symmetric).
IncrementLaw build_plane_radial_law(const ChainSpec& spec);
IncrementLaw build_plane_transverse_law(const ChainSpec& spec);
/// Both laws merged with weights p_radial and 1 - p_radial; component axes
/// say which direction the draw applies to.
IncrementLaw build_plane_step_law(const ChainSpec& spec);

struct Draw {
    double value;
    std::size_t component;
};

/// u.u1 selects the component, u.u2 drives its inverse CDF.
Draw sample_indexed(const IncrementLaw& law, UniformPair u);
inline double sample(const IncrementLaw& law, UniformPair u) { return sample_indexed(law, u).value; }
inline double sample(const IncrementLaw& law, Stream& s) { return sample(law, s.next_pair()); }

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

double norm(Point2 p);

/// Next state; HalfLine clamps with max(0, x + θ). Consumes one block.
double step(const LawFactory& laws, double x, Stream& s);
double step(const ChainSpec& spec, double x, Stream& s);

/// Plane step using a prebuilt step law. u_x = x/|x| (u = (1,0) at the
/// origin) and v_x is u_x rotated by +π/2.
Point2 step_plane(const IncrementLaw& step_law, Point2 x, UniformPair u);
Point2 step(const ChainSpec& spec, Point2 x, Stream& s);

}  // namespace lamperti
