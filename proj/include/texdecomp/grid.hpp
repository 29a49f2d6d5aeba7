#pragma once

// Finite-difference operators on ScalarField / VectorField.
//
// gradient: forward differences, zero on the last row (comp1) / last
// column (comp2). divergence: backward differences, the exact negative
// adjoint of gradient, so <grad u, p> == -<u, div p>.

#include <cmath>
#include <cstddef>
#include <limits>

#include "texdecomp/field.hpp"

namespace texdecomp {

/// Forward differences into a preallocated field of the same shape.
inline void gradient_into(const ScalarField& u, VectorField& g) {
    const std::size_t h = u.height(), w = u.width();
    const double* src = u.values().data();
    double* g1 = g.comp1.values().data();
    double* g2 = g.comp2.values().data();
    for (std::size_t i = 0; i < h; ++i) {
        const double* row = src + i * w;
        double* r1 = g1 + i * w;
        double* r2 = g2 + i * w;
        if (i + 1 < h) {
            for (std::size_t j = 0; j < w; ++j) r1[j] = row[j + w] - row[j];
        } else {
            for (std::size_t j = 0; j < w; ++j) r1[j] = 0.0;
        }
        for (std::size_t j = 0; j + 1 < w; ++j) r2[j] = row[j + 1] - row[j];
        r2[w - 1] = 0.0;
    }
}

inline VectorField gradient(const ScalarField& u) {
    VectorField g(u.height(), u.width());
    gradient_into(u, g);
    return g;
}

/// Backward differences (negative adjoint of gradient) into a preallocated field.
inline void divergence_into(const VectorField& p, ScalarField& d) {
    const std::size_t h = p.height(), w = p.width();
    const double* p1 = p.comp1.values().data();
    const double* p2 = p.comp2.values().data();
    double* out = d.values().data();
    for (std::size_t i = 0; i < h; ++i) {
        const double* a = p1 + i * w;
        const double* above = i > 0 ? a - w : nullptr;
        const double* b = p2 + i * w;
        double* r = out + i * w;
        for (std::size_t j = 0; j < w; ++j) {
            const double down = (i + 1 < h) ? a[j] : 0.0;
            const double up = above ? above[j] : 0.0;
            const double right = (j + 1 < w) ? b[j] : 0.0;
            const double left = (j > 0) ? b[j - 1] : 0.0;
            r[j] = (down - up) + (right - left);
        }
    }
}

inline ScalarField divergence(const VectorField& p) {
    ScalarField d(p.height(), p.width());
    divergence_into(p, d);
    return d;
}

/// div(grad u): the 5-point Laplacian with reflecting (Neumann) boundary.
inline ScalarField laplacian(const ScalarField& u) { return divergence(gradient(u)); }

inline double inner_product(const ScalarField& a, const ScalarField& b) {
    a.require_same_shape(b, "inner_product");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline double inner_product(const VectorField& a, const VectorField& b) {
    return inner_product(a.comp1, b.comp1) + inner_product(a.comp2, b.comp2);
}

inline double norm_l2(const ScalarField& a) { return std::sqrt(inner_product(a, a)); }

inline double norm_l2(const VectorField& a) { return std::sqrt(inner_product(a, a)); }

inline double norm_inf(const ScalarField& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

inline double mean(const ScalarField& a) {
    double s = 0.0;
    for (double x : a) s += x;
    return s / static_cast<double>(a.size());
}

/// Per-pixel Euclidean magnitude of a vector field.
inline ScalarField magnitude(const VectorField& p) {
    ScalarField m(p.height(), p.width());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::hypot(p.comp1[k], p.comp2[k]);
    return m;
}

/// Isotropic discrete total variation: sum over pixels of |grad u|.
inline double tv_energy(const ScalarField& u) {
    const VectorField g = gradient(u);
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += std::sqrt(g.comp1[k] * g.comp1[k] + g.comp2[k] * g.comp2[k]);
    return s;
}

/// J(u) + (lambda/2) ||f - u||^2.
inline double rof_energy(const ScalarField& u, const ScalarField& f, double lambda) {
    const double r = norm_l2(f - u);
    return tv_energy(u) + 0.5 * lambda * r * r;
}

inline constexpr double kRelativeFloor = 1e-12;

/// ||next - prev|| / max(||prev||, 1e-12).
inline double relative_change(const ScalarField& next, const ScalarField& prev) {
    return norm_l2(next - prev) / std::max(norm_l2(prev), kRelativeFloor);
}

/// ||a - b|| / max(||b||, 1e-12).
inline double relative_l2(const ScalarField& a, const ScalarField& b) { return relative_change(a, b); }

}  // namespace texdecomp
