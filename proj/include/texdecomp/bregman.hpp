#pragma once

// Split Bregman solver for the ROF problem
//   min_u J(u) + (lambda/2) ||f - u||^2
// with the splitting d ~ grad u and Bregman variable b:
//   u^{k+1} = argmin (lambda/2)||u - f||^2 + (eta/2)||d^k - grad u - b^k||^2
//   d^{k+1} = shrink(grad u^{k+1} + b^k, 1/eta)
//   b^{k+1} = b^k + grad u^{k+1} - d^{k+1}

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "texdecomp/field.hpp"
#include "texdecomp/grid.hpp"
#include "texdecomp/spectral.hpp"
#include "texdecomp/stats.hpp"

namespace texdecomp {

enum class UUpdate { fourier, gauss_seidel };

enum class FourierBoundary { reflected, periodic };

struct BregmanParams {
    /// Splitting weight. Unset means 2 * lambda of the instance being solved.
    std::optional<double> eta;
    double tol = 1e-5;
    int max_iters = 500;
    UUpdate u_update = UUpdate::fourier;
    FourierBoundary fourier_boundary = FourierBoundary::reflected;
    int gs_sweeps = 1;

    double eta_for(double lambda) const { return eta.value_or(2.0 * lambda); }

    void validate() const {
        if (eta && (!(*eta > 0.0) || !std::isfinite(*eta))) throw ParameterError("bregman: eta must be positive");
        if (!(tol > 0.0)) throw ParameterError("bregman: tol must be positive");
        if (max_iters < 1) throw ParameterError("bregman: max_iters must be >= 1");
        if (gs_sweeps < 1) throw ParameterError("bregman: gs_sweeps must be >= 1");
    }
};

struct BregmanState {
    ScalarField u;
    VectorField d;
    VectorField b;
};

/// Isotropic shrinkage: max(|g| - t, 0) g / |g| per pixel, 0 where |g| = 0.
inline VectorField shrink(const VectorField& g, double threshold) {
    if (!(threshold > 0.0)) throw ParameterError("shrink: threshold must be positive");
    VectorField out(g.height(), g.width());
    for (std::size_t k = 0; k < g.comp1.size(); ++k) {
        const double g1 = g.comp1[k], g2 = g.comp2[k];
        const double s = std::sqrt(g1 * g1 + g2 * g2);
        if (s > threshold) {
            const double scale = (s - threshold) / s;
            out.comp1[k] = g1 * scale;
            out.comp2[k] = g2 * scale;
        }
    }
    return out;
}

/// Right-hand side lambda f - eta div(d - b) of the u-subproblem.
inline ScalarField u_update_rhs(const ScalarField& f, const VectorField& d, const VectorField& b, double lambda,
                                double eta) {
    ScalarField rhs = divergence(d - b);
    for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = lambda * f[k] - eta * rhs[k];
    return rhs;
}

/// One-shot Fourier u-update: solves (lambda - eta Laplacian) u = lambda f - eta div(d - b).
/// `boundary` picks which Laplacian the transform diagonalizes.
inline ScalarField u_update_fourier(const ScalarField& f, const VectorField& d, const VectorField& b, double lambda,
                                    double eta, FourierBoundary boundary = FourierBoundary::reflected) {
    if (!(lambda > 0.0)) throw ParameterError("u_update_fourier: lambda must be positive");
    const ScalarField rhs = u_update_rhs(f, d, b, lambda, eta);
    ScalarField u = boundary == FourierBoundary::periodic
                        ? PeriodicScreenedPoisson(f.height(), f.width()).solve(rhs, lambda, eta)
                        : ReflectedScreenedPoisson(f.height(), f.width()).solve(rhs, lambda, eta);
    require_finite(u, "u_update_fourier");
    return u;
}

/// Lexicographic Gauss-Seidel sweeps on (lambda - eta Laplacian) u = rhs with
/// the reflecting-boundary Laplacian, in place.
inline void gauss_seidel_sweeps(ScalarField& u, const ScalarField& rhs, double lambda, double eta, int sweeps) {
    const std::size_t h = u.height(), w = u.width();
    for (int s = 0; s < sweeps; ++s) {
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = 0; j < w; ++j) {
                double acc = 0.0;
                int neighbours = 0;
                if (i > 0) acc += u(i - 1, j), ++neighbours;
                if (i + 1 < h) acc += u(i + 1, j), ++neighbours;
                if (j > 0) acc += u(i, j - 1), ++neighbours;
                if (j + 1 < w) acc += u(i, j + 1), ++neighbours;
                u(i, j) = (rhs(i, j) + eta * acc) / (lambda + eta * neighbours);
            }
        }
    }
}

/// Gauss-Seidel u-update warm-started from state.u.
inline ScalarField u_update_gauss_seidel(const BregmanState& state, const ScalarField& f, double lambda, double eta,
                                         int sweeps) {
    if (!(lambda > 0.0)) throw ParameterError("u_update_gauss_seidel: lambda must be positive");
    if (sweeps < 1) throw ParameterError("u_update_gauss_seidel: sweeps must be >= 1");
    ScalarField u = state.u;
    gauss_seidel_sweeps(u, u_update_rhs(f, state.d, state.b, lambda, eta), lambda, eta, sweeps);
    require_finite(u, "u_update_gauss_seidel");
    return u;
}

struct BregmanResult {
    ScalarField value;
    BregmanState state;
    RunStats stats;
    /// ||d - grad u|| / ||grad u|| at exit.
    double split_residual = 0.0;
};

/// ||d - grad u|| / max(||grad u||, floor).
inline double split_residual(const VectorField& d, const VectorField& grad_u, double floor = kRelativeFloor) {
    return norm_l2(d - grad_u) / std::max({norm_l2(grad_u), floor, kRelativeFloor});
}

/// Floor for the split-residual denominator, relative to ||grad f||. Keeps the
/// test meaningful when the minimizer is flat and grad u is pure roundoff.
inline constexpr double kSplitFloor = 1e-8;

/// Exit requires the splitting residual to be within this multiple of tol.
inline constexpr double kSplitSlack = 10.0;

/// Split Bregman ROF solve. Stops once ||u^{k+1} - u^k|| / max(||u^k||, 1e-12) < tol
/// and the splitting residual is at most kSplitSlack * tol.
inline BregmanResult p_rof_full(const ScalarField& f, double lambda, const BregmanParams& params) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("p_rof: lambda must be positive");
    params.validate();
    require_finite(f, "p_rof input");
    Stopwatch clock;

    const double eta = params.eta_for(lambda);
    const std::size_t h = f.height(), w = f.width();

    BregmanResult out;
    BregmanState& st = out.state;
    st.u = f;
    st.d = VectorField(h, w);
    st.b = VectorField(h, w);

    std::optional<ReflectedScreenedPoisson> reflected;
    std::optional<PeriodicScreenedPoisson> periodic;
    if (params.u_update == UUpdate::fourier) {
        if (params.fourier_boundary == FourierBoundary::periodic) {
            periodic.emplace(h, w);
        } else {
            reflected.emplace(h, w);
        }
    }

    const double floor = kSplitFloor * norm_l2(gradient(f));
    VectorField grad_u;
    for (int it = 1; it <= params.max_iters; ++it) {
        ScalarField next;
        if (params.u_update == UUpdate::fourier) {
            const ScalarField rhs = u_update_rhs(f, st.d, st.b, lambda, eta);
            next = periodic ? periodic->solve(rhs, lambda, eta) : reflected->solve(rhs, lambda, eta);
        } else {
            next = st.u;
            gauss_seidel_sweeps(next, u_update_rhs(f, st.d, st.b, lambda, eta), lambda, eta, params.gs_sweeps);
        }

        grad_u = gradient(next);
        VectorField g = grad_u + st.b;
        st.d = shrink(g, 1.0 / eta);
        st.b = std::move(g);
        st.b -= st.d;

        const double change = relative_change(next, st.u);
        if (!std::isfinite(change)) throw NonFiniteError("p_rof iterate");
        st.u = std::move(next);

        out.stats.outer_iters = it;
        out.stats.change_trace.push_back(change);
        if (change < params.tol && split_residual(st.d, grad_u, floor) <= kSplitSlack * params.tol) {
            out.stats.converged = true;
            break;
        }
    }
    out.stats.inner_iters_total = out.stats.outer_iters;
    if (!out.stats.converged) out.stats.warnings.push_back("p_rof: max_iters reached before tol");

    out.split_residual = split_residual(st.d, grad_u, floor);
    require_finite(st.u, "p_rof output");
    out.value = st.u;
    out.stats.wall_time = clock.seconds();
    return out;
}

inline FieldResult p_rof(const ScalarField& f, double lambda, const BregmanParams& params) {
    auto r = p_rof_full(f, lambda, params);
    return {std::move(r.value), std::move(r.stats)};
}

}  // namespace texdecomp
