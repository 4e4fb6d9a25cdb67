// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace lamperti::specialfn {

using Integrand = std::function<double(double)>;

/// Integrand that also receives the distances of the node to both ends of the
/// original interval, (x - a) and (b - x), computed without cancellation.
/// Lets callers evaluate factors like (1-u)^{q-1} accurately near a singular
/// endpoint. `to_b` is +inf on a semi-infinite range.
using EndpointIntegrand = std::function<double(double x, double from_a, double to_b)>;

/// ∫_a^b f within abs_tol (or ~1e-15 relative, whichever is looser).
///
/// b may be +infinity, in which case the range is mapped onto [0,1) by
/// u = a + L t/(1-t) with L = max(1, |a|). Each panel is integrated by the
/// tanh-sinh rule, which tolerates integrable algebraic singularities at the
/// panel ends; panels that do not converge are bisected. Throws
/// ConvergenceError when the bisection depth passes 60 or the panel budget is
/// exhausted.
double integrate_adaptive(const EndpointIntegrand& f, double a, double b, double abs_tol);
double integrate_adaptive(const Integrand& f, double a, double b, double abs_tol);

}  // namespace lamperti::specialfn
