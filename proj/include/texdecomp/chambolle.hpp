#pragma once

// Chambolle's dual fixed-point projector onto the G-ball
//   G_mu = { mu * div p : |p_ij| <= 1 }
// and the ROF solver u = f - P_{G_{1/lambda}}(f) built on it.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "texdecomp/field.hpp"
#include "texdecomp/grid.hpp"
#include "texdecomp/stats.hpp"

namespace texdecomp {

struct ProjectorParams {
    double mu = 1.0;
    double tau = 0.124;     // must stay strictly below 1/8
    double tol = 1e-6;      // stop when max |p^{n+1} - p^n| < tol
    int max_iters = 2000;

    void validate() const {
        if (!(mu > 0.0) || !std::isfinite(mu)) throw ParameterError("projector: mu must be positive");
        if (!(tau > 0.0) || !(tau < 0.125)) throw ParameterError("projector: tau must lie in (0, 1/8)");
        if (!(tol > 0.0)) throw ParameterError("projector: tol must be positive");
        if (max_iters < 1) throw ParameterError("projector: max_iters must be >= 1");
    }
};

struct ProjectionResult {
    ScalarField value;  // mu * div p
    VectorField dual;   // p, |p_ij| <= 1 everywhere
    RunStats stats;
};

/// Fixed-point iteration
///   p <- (p + tau g) / (1 + tau |g|),  g = grad(div p - f/mu),
/// from p = 0, stopped on the L-infinity change of p. Non-convergence within
/// max_iters is reported through stats.converged, not thrown.
inline ProjectionResult project_G_full(const ScalarField& f, const ProjectorParams& params) {
    params.validate();
    require_finite(f, "project_G input");
    Stopwatch clock;

    const std::size_t n = f.size();
    const double inv_mu = 1.0 / params.mu;
    const double tau = params.tau;

    ProjectionResult out;
    out.dual = VectorField(f.height(), f.width());
    VectorField& p = out.dual;

    ScalarField r(f.height(), f.width());
    VectorField g(f.height(), f.width());
    std::vector<double> step(n);
    double* p1 = p.comp1.values().data();
    double* p2 = p.comp2.values().data();
    const double* g1 = g.comp1.values().data();
    const double* g2 = g.comp2.values().data();
    for (int it = 1; it <= params.max_iters; ++it) {
        divergence_into(p, r);
        for (std::size_t k = 0; k < n; ++k) r[k] -= f[k] * inv_mu;
        gradient_into(r, g);

        for (std::size_t k = 0; k < n; ++k) {
            const double scale = 1.0 / (1.0 + tau * std::sqrt(g1[k] * g1[k] + g2[k] * g2[k]));
            const double q1 = (p1[k] + tau * g1[k]) * scale;
            const double q2 = (p2[k] + tau * g2[k]) * scale;
            step[k] = std::max(std::abs(q1 - p1[k]), std::abs(q2 - p2[k]));
            p1[k] = q1;
            p2[k] = q2;
        }
        double change = 0.0;
        for (double d : step) change = std::max(change, d);
        if (!std::isfinite(change)) throw NonFiniteError("project_G iterate");

        out.stats.outer_iters = it;
        out.stats.change_trace.push_back(change);
        if (change < params.tol) {
            out.stats.converged = true;
            break;
        }
    }
    out.stats.inner_iters_total = out.stats.outer_iters;
    if (!out.stats.converged) {
        out.stats.warnings.push_back("project_G: max_iters reached before tol");
    }

    out.value = divergence(p) * params.mu;
    require_finite(out.value, "project_G output");
    out.stats.wall_time = clock.seconds();
    return out;
}

/// P_{G_mu}(f), computed as mu * div p.
inline FieldResult project_G(const ScalarField& f, const ProjectorParams& params) {
    auto r = project_G_full(f, params);
    return {std::move(r.value), std::move(r.stats)};
}

/// Minimizer of J(u) + (lambda/2)||f - u||^2 via u = f - P_{G_{1/lambda}}(f).
/// params.mu is ignored; the ball radius is 1/lambda.
inline FieldResult rof_chambolle(const ScalarField& f, double lambda, ProjectorParams params) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("rof_chambolle: lambda must be positive");
    params.mu = 1.0 / lambda;
    auto proj = project_G(f, params);
    return {f - proj.value, std::move(proj.stats)};
}

}  // namespace texdecomp
