// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace lamperti {

struct SelftestOptions {
    double quad_tol = 1e-10;   // absolute tolerance handed to the quadrature
    double gamma_fault = 0.0;  // relative Γ perturbation injected for the run
};

struct SelftestCheck {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct SelftestReport {
    std::vector<SelftestCheck> checks;
    bool passed() const;
};

/// Special-function identities, closed-form integrals against quadrature,
/// and classifier/ν* consistency. Deterministic.
SelftestReport run_selftest(const SelftestOptions& opt = {});

}  // namespace lamperti
