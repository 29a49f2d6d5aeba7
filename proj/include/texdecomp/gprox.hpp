#pragma once

// G-norm subproblem
//   v = argmin_{v in G_mu} (lambda/2) ||f - v||^2
// solved through the ROF dual: with w = lambda (f - v), w minimizes
//   J(w) + (1/(2 lambda mu)) ||lambda f - w||^2,
// so v = f - (1/lambda) P_ROF(lambda f, 1/(lambda mu)). The result is the
// projection of f onto G_mu and does not depend on lambda.

#include <cmath>
#include <string>

#include "texdecomp/bregman.hpp"
#include "texdecomp/field.hpp"
#include "texdecomp/stats.hpp"

namespace texdecomp {

/// Below this ROF fidelity coefficient the inner solve gets a larger
/// iteration budget and a warning.
inline constexpr double kExtremeFidelity = 1e-8;

inline FieldResult gnorm_prox(const ScalarField& f, double lambda, double mu, const BregmanParams& params) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("gnorm_prox: lambda must be positive");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ParameterError("gnorm_prox: mu must be positive");
    params.validate();

    const double fidelity = 1.0 / (lambda * mu);
    BregmanParams inner = params;
    inner.tol = params.tol / 10.0;
    // A user-supplied eta is interpreted relative to lambda, the fidelity of
    // the caller's problem, and carried over to the scaled instance.
    if (params.eta) inner.eta = *params.eta / lambda * fidelity;

    std::string warning;
    if (fidelity < kExtremeFidelity) {
        inner.max_iters = params.max_iters * 10;
        warning = "gnorm_prox: extreme lambda*mu (fidelity " + std::to_string(fidelity) +
                  "), iteration budget raised to " + std::to_string(inner.max_iters);
    }

    auto rof = p_rof(f * lambda, fidelity, inner);
    ScalarField v = f;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= rof.value[k] / lambda;
    require_finite(v, "gnorm_prox output");
    if (!warning.empty()) rof.stats.warnings.insert(rof.stats.warnings.begin(), warning);
    return {std::move(v), std::move(rof.stats)};
}

}  // namespace texdecomp
