#pragma once

// Cartoon + texture decomposition f = u + v + residual by alternating
// minimization of
//   F(u, v) = J(u) + J*(v/mu) + (lambda/2) ||f - u - v||^2,
// where J*(v/mu) is the indicator of the G-ball of radius mu.
//
// decompose_chambolle:  v <- P_{G_mu}(f - u),  u <- (f - v) - P_{G_{1/lambda}}(f - v)
// decompose_bregman:    u <- P_ROF(f - v, lambda),
//                       v <- (f - u) - (1/lambda) P_ROF(lambda (f - u), 1/(lambda mu))

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "texdecomp/bregman.hpp"
#include "texdecomp/chambolle.hpp"
#include "texdecomp/field.hpp"
#include "texdecomp/gprox.hpp"
#include "texdecomp/grid.hpp"
#include "texdecomp/stats.hpp"

namespace texdecomp {

enum class Method { chambolle, bregman };

inline const char* to_string(Method m) { return m == Method::chambolle ? "chambolle" : "bregman"; }

struct DecompParams {
    double lambda = 1000.0;
    double mu = 1000.0;
    double outer_tol = 1e-3;
    int max_outer = 50;
    Method method = Method::bregman;
    ProjectorParams projector;  // used when method == chambolle; mu is set per call
    BregmanParams bregman;      // used when method == bregman

    /// Defaults with both inner tolerances at outer_tol / 10.
    static DecompParams with_defaults(Method method, double lambda, double mu, double outer_tol = 1e-3) {
        DecompParams p;
        p.method = method;
        p.lambda = lambda;
        p.mu = mu;
        p.outer_tol = outer_tol;
        p.projector.tol = outer_tol / 10.0;
        p.bregman.tol = outer_tol / 10.0;
        return p;
    }

    void validate() const {
        if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("decompose: lambda must be positive");
        if (!(mu > 0.0) || !std::isfinite(mu)) throw ParameterError("decompose: mu must be positive");
        if (!(outer_tol > 0.0)) throw ParameterError("decompose: outer_tol must be positive");
        if (max_outer < 1) throw ParameterError("decompose: max_outer must be >= 1");
    }
};

struct DecompositionResult {
    ScalarField cartoon;
    ScalarField texture;
    ScalarField residual;  // f - cartoon - texture
    RunStats stats;
    std::vector<double> energy_trace;
};

/// J(u) + (lambda/2)||f - u - v||^2. The J*(v/mu) term is omitted: it is an
/// indicator that both algorithms keep at zero by construction.
inline double fau_energy(const ScalarField& u, const ScalarField& v, const ScalarField& f, double lambda,
                         double /*mu*/) {
    u.require_same_shape(f, "fau_energy");
    v.require_same_shape(f, "fau_energy");
    ScalarField r = f - u;
    r -= v;
    const double n = norm_l2(r);
    return tv_energy(u) + 0.5 * lambda * n * n;
}

namespace detail {

template <typename Step>
DecompositionResult alternate(const ScalarField& f, const DecompParams& params, Step&& step) {
    params.validate();
    require_finite(f, "decompose input");
    Stopwatch clock;

    DecompositionResult out;
    ScalarField u(f.height(), f.width());
    ScalarField v(f.height(), f.width());

    for (int n = 1; n <= params.max_outer; ++n) {
        auto [u_next, v_next] = step(u, v, out.stats);
        const double change = std::max(relative_change(u_next, u), relative_change(v_next, v));
        u = std::move(u_next);
        v = std::move(v_next);

        out.stats.outer_iters = n;
        out.stats.change_trace.push_back(change);
        out.energy_trace.push_back(fau_energy(u, v, f, params.lambda, params.mu));
        if (change < params.outer_tol) {
            out.stats.converged = true;
            break;
        }
    }
    if (!out.stats.converged) out.stats.warnings.push_back("decompose: max_outer reached before outer_tol");

    out.residual = f - u;
    out.residual -= v;
    out.cartoon = std::move(u);
    out.texture = std::move(v);
    out.stats.wall_time = clock.seconds();
    return out;
}

}  // namespace detail

inline DecompositionResult decompose_chambolle(const ScalarField& f, const DecompParams& params) {
    if (params.method != Method::chambolle) throw ParameterError("decompose_chambolle: method must be chambolle");
    ProjectorParams texture_proj = params.projector;
    texture_proj.mu = params.mu;

    return detail::alternate(f, params, [&](const ScalarField& u, const ScalarField&, RunStats& stats) {
        auto v = project_G(f - u, texture_proj);
        stats.absorb(v.stats);
        const ScalarField fv = f - v.value;
        auto u_next = rof_chambolle(fv, params.lambda, params.projector);
        stats.absorb(u_next.stats);
        return std::pair{std::move(u_next.value), std::move(v.value)};
    });
}

inline DecompositionResult decompose_bregman(const ScalarField& f, const DecompParams& params) {
    if (params.method != Method::bregman) throw ParameterError("decompose_bregman: method must be bregman");

    return detail::alternate(f, params, [&](const ScalarField&, const ScalarField& v, RunStats& stats) {
        auto u_next = p_rof(f - v, params.lambda, params.bregman);
        stats.absorb(u_next.stats);
        auto v_next = gnorm_prox(f - u_next.value, params.lambda, params.mu, params.bregman);
        stats.absorb(v_next.stats);
        return std::pair{std::move(u_next.value), std::move(v_next.value)};
    });
}

inline DecompositionResult decompose(const ScalarField& f, const DecompParams& params) {
    return params.method == Method::chambolle ? decompose_chambolle(f, params) : decompose_bregman(f, params);
}

}  // namespace texdecomp
