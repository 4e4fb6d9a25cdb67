// SPDX-License-Identifier: Apache-2.0
#include "lamperti/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "lamperti/classify.hpp"
#include "lamperti/error.hpp"
#include "lamperti/rng.hpp"
#include "lamperti/specialfn.hpp"

namespace lamperti {
namespace {

namespace sf = specialfn;
constexpr double kPi = std::numbers::pi;

// Restores the Γ perturbation on scope exit.
struct FaultGuard {
    explicit FaultGuard(double rel) : saved(sf::testing::gamma_perturbation()) { sf::testing::set_gamma_perturbation(rel); }
    ~FaultGuard() { sf::testing::set_gamma_perturbation(saved); }
    double saved;
};

std::vector<double> exponent_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 9; ++k) g.push_back(1.0 + 0.1 * k);
    return g;
}

// Runs `body`, which returns the worst error; any exception fails the check.
SelftestCheck check(const std::string& name, double tol, const std::function<double()>& body) {
    SelftestCheck c{name, 0.0, tol, false};
    try {
        c.max_error = body();
        c.passed = std::isfinite(c.max_error) && c.max_error <= tol;
    } catch (const std::exception&) {
        c.max_error = std::numeric_limits<double>::infinity();
    }
    return c;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

double uniform_in(Stream& s, double lo, double hi) { return lo + (hi - lo) * s.uniform(); }

// Draw avoiding |v - avoid| < gap for each value in `avoid`.
double draw_avoiding(Stream& s, double lo, double hi, std::initializer_list<double> avoid, double gap) {
    for (;;) {
        const double v = uniform_in(s, lo, hi);
        if (std::all_of(avoid.begin(), avoid.end(), [&](double a) { return std::abs(v - a) >= gap; })) return v;
    }
}

struct Draw3 {
    double p;
    double q;
    std::optional<double> x;
};

Draw3 draw_params(sf::ClosedForm f, Stream& s) {
    switch (f) {
        case sf::ClosedForm::PositivePart: return {uniform_in(s, -0.9, -0.1), uniform_in(s, -0.9, 0.9), std::nullopt};
        case sf::ClosedForm::NegativeTo:
            return {draw_avoiding(s, -0.9, 1.5, {0.0}, 0.1), uniform_in(s, 0.1, 2.0), 1e4};
        case sf::ClosedForm::NegativeFrom: {
            const double q = uniform_in(s, 0.1, 1.5);
            return {uniform_in(s, -1.5, 0.9 - q), q, 1e4};
        }
        case sf::ClosedForm::BetaConst: return {draw_avoiding(s, -0.9, 2.0, {0.0}, 0.1), uniform_in(s, 0.1, 2.0), std::nullopt};
        case sf::ClosedForm::BetaLinear:
            return {draw_avoiding(s, -0.9, 2.5, {0.0, 1.0}, 0.1), uniform_in(s, -0.9, 2.0), std::nullopt};
    }
    return {0.0, 0.0, std::nullopt};
}

}  // namespace

bool SelftestReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

SelftestReport run_selftest(const SelftestOptions& opt) {
    const FaultGuard guard(opt.gamma_fault);
    SelftestReport rep;
    auto add = [&](SelftestCheck c) { rep.checks.push_back(std::move(c)); };

    add(check("gamma_reflection", 1e-10, [] {
        Stream s(0x5eed, 1);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const double z = uniform_in(s, -5.0, 5.0);
            if (std::abs(z - std::round(z)) < 1e-3) continue;
            const double v = sf::gamma_real(z) * sf::gamma_real(1.0 - z) * sf::sin_pi(z) / kPi;
            worst = std::max(worst, std::abs(v - 1.0));
        }
        return worst;
    }));
    add(check("kappa0_forms", 1e-12, [] {
        double worst = 0.0;
        for (double a : exponent_grid())
            for (double nu = -0.5; nu < a - 0.05; nu += 0.1) {
                const double x = sf::kappa0(a, nu);
                const double y = sf::kappa0_reduced({a, nu});
                worst = std::max(worst, std::abs(x - y) / std::max(std::abs(y), 1e-300));
            }
        return worst;
    }));
    add(check("kappa0_limit", 1e-8, [] {
        double worst = 0.0;
        for (double a : exponent_grid()) worst = std::max(worst, rel_err(sf::kappa0(a, 0.0), kPi / sf::sin_pi(a)));
        return worst;
    }));
    add(check("kappa1_limit", 1e-8, [] {
        double worst = 0.0;
        for (double b : exponent_grid()) worst = std::max(worst, rel_err(sf::kappa1(b, 0.0), -1.0));
        return worst;
    }));
    add(check("kappa2_limit", 1e-8, [] {
        double worst = 0.0;
        for (double b : exponent_grid()) worst = std::max(worst, rel_err(sf::kappa2(b, 0.0), kPi * sf::cot_pi(b)));
        return worst;
    }));
    add(check("kappa2_root", 1e-8, [] {
        double worst = 0.0;
        for (double b : exponent_grid()) worst = std::max(worst, std::abs(sf::kappa2(b, 2.0 * b - 3.0)));
        return worst;
    }));
    add(check("balanced_limit", 1e-8, [] {
        double worst = 0.0;
        for (double a : exponent_grid())
            worst = std::max(worst, rel_err(sf::kappa0(a, 0.0) + sf::kappa2(a, 0.0), kPi * sf::cot_pi(0.5 * a)));
        return worst;
    }));
    add(check("beta_recurrence", 1e-8, [] {
        Stream s(0x5eed, 2);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double x = uniform_in(s, 0.05, 0.95);
            const double p = uniform_in(s, 0.1, 2.0);
            const double q = draw_avoiding(s, -0.9, 2.0, {0.0}, 0.05);
            const double lhs = q * sf::incomplete_beta_ext(x, p, q);
            const double rhs = (p + q) * sf::incomplete_beta_ext(x, p, q + 1.0) - std::pow(x, p) * std::pow(1.0 - x, q);
            worst = std::max(worst, rel_err(lhs, rhs));
        }
        return worst;
    }));

    std::uint64_t stream_id = 10;
    for (auto f : {sf::ClosedForm::PositivePart, sf::ClosedForm::NegativeTo, sf::ClosedForm::NegativeFrom,
                   sf::ClosedForm::BetaConst, sf::ClosedForm::BetaLinear}) {
        const bool asymptotic = f == sf::ClosedForm::NegativeTo || f == sf::ClosedForm::NegativeFrom;
        const std::uint64_t id = stream_id++;
        add(check(std::string(sf::to_string(f)), asymptotic ? 1e-3 : 1e-6, [&, f, id] {
            Stream s(0x5eed, id);
            double worst = 0.0;
            for (int k = 0; k < 20; ++k) {
                const Draw3 d = draw_params(f, s);
                const double closed = sf::closed_form_integral(f, d.p, d.q, d.x);
                const double quad = sf::closed_form_by_quadrature(f, d.p, d.q, d.x, opt.quad_tol);
                worst = std::max(worst, rel_err(closed, quad));
            }
            return worst;
        }));
    }

    add(check("nu_star_anchors", 1e-8, [] {
        double worst = 0.0;
        for (double e : exponent_grid()) {
            ChainSpec h;
            h.regime = Regime::HalfLine;
            h.tail.alpha = e;
            worst = std::max(worst, std::abs(nu_star(h).nu_star - 1.0));
            ChainSpec bal;
            bal.regime = Regime::LineBalanced;
            bal.tail.alpha = e;
            bal.p_heavy = 0.2;
            worst = std::max(worst, std::abs(nu_star(bal).nu_star - (e - 1.0)));
            if (e > 1.55) {
                ChainSpec in;
                in.regime = Regime::LineIn;
                in.tail.beta = e;
                in.tail.alpha = 3.0;
                worst = std::max(worst, std::abs(nu_star(in).nu_star - (2.0 * e - 3.0)));
            }
        }
        return worst;
    }));
    add(check("classifier_coherence", 0.0, [] {
        double mismatches = 0.0;
        for (auto r : {Regime::HalfLine, Regime::LineOut, Regime::LineIn, Regime::LineBalanced}) {
            for (double e : {1.3, 1.6, 1.8}) {
                for (double b = -3.0; b <= 3.0; b += 0.25) {
                    ChainSpec s;
                    s.regime = r;
                    s.p_heavy = 0.2;
                    if (r == Regime::LineIn) {
                        s.tail.beta = e;
                        s.tail.alpha = 3.0;
                    } else {
                        s.tail.alpha = e;
                    }
                    s.tail.c = 1.0;
                    s.drift.gamma = e - 1.0;
                    s.drift.b = b;
                    Classification c;
                    try {
                        c = classify(s);
                    } catch (const InfeasibleDrift&) {
                        continue;
                    }
                    if (c.phase == Phase::Critical) continue;
                    bool root = true;
                    try {
                        (void)nu_star(s);
                    } catch (const NoRootError&) {
                        root = false;
                    }
                    if (root != is_recurrent(c.phase)) mismatches += 1.0;
                }
            }
        }
        return mismatches;
    }));
    add(check("plane_identity", 1e-10, [] {
        double worst = 0.0;
        for (double pr : {0.1, 0.5, 0.9}) {
            ChainSpec s;
            s.regime = Regime::Plane;
            s.tail.alpha = 1.5;
            s.plane = PlaneParams{pr, 1.0, 1.0, 2.0};
            for (double nu = 0.05; nu < 1.0; nu += 0.1)
                worst = std::max(worst, rel_err(nu_star_function(s, nu), plane_equation_gamma_form(s, nu)));
        }
        return worst;
    }));
    return rep;
}

}  // namespace lamperti
