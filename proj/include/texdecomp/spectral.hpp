#pragma once

// Spectral solvers for the screened Poisson system (lambda - eta * Laplacian) u = rhs.
//
// PeriodicScreenedPoisson diagonalizes the wrap-around 5-point Laplacian with
// a real 2-D DFT. ReflectedScreenedPoisson applies the same DFT to the
// half-sample even reflection of the image (computed as a DCT-II pair), which
// diagonalizes the reflecting-boundary Laplacian div(grad(.)) of grid.hpp.

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "texdecomp/field.hpp"

namespace texdecomp {

namespace detail {

// FFTW's planner is not reentrant.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* plan) const {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwFree {
    void operator()(void* ptr) const { fftw_free(ptr); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
    auto* raw = static_cast<T*>(fftw_malloc(sizeof(T) * count));
    if (raw == nullptr) throw std::bad_alloc();
    return FftwBuffer<T>(raw);
}

/// Eigenvalue of the 1-D second difference for mode k: -(2 - 2 cos(theta)).
inline double second_difference_symbol(double theta) { return -(2.0 - 2.0 * std::cos(theta)); }

}  // namespace detail

class PeriodicScreenedPoisson {
public:
    PeriodicScreenedPoisson(std::size_t height, std::size_t width)
        : h_(height), w_(width), wc_(width / 2 + 1),
          real_(detail::fftw_buffer<double>(height * width)),
          spec_(detail::fftw_buffer<fftw_complex>(height * wc_)) {
        std::lock_guard lock(detail::fftw_planner_mutex());
        const int hh = static_cast<int>(h_), ww = static_cast<int>(w_);
        forward_.reset(fftw_plan_dft_r2c_2d(hh, ww, real_.get(), spec_.get(), FFTW_ESTIMATE));
        inverse_.reset(fftw_plan_dft_c2r_2d(hh, ww, spec_.get(), real_.get(), FFTW_ESTIMATE));
        symbol_.resize(h_ * wc_);
        for (std::size_t k = 0; k < h_; ++k) {
            const double sk = detail::second_difference_symbol(2.0 * std::numbers::pi * double(k) / double(h_));
            for (std::size_t l = 0; l < wc_; ++l) {
                symbol_[k * wc_ + l] =
                    sk + detail::second_difference_symbol(2.0 * std::numbers::pi * double(l) / double(w_));
            }
        }
    }

    /// Transfer function of the periodic Laplacian at frequency (k, l), l <= W/2.
    double laplacian_symbol(std::size_t k, std::size_t l) const { return symbol_[k * wc_ + l]; }

    ScalarField solve(const ScalarField& rhs, double lambda, double eta) {
        std::copy(rhs.begin(), rhs.end(), real_.get());
        fftw_execute(forward_.get());
        const double scale = 1.0 / static_cast<double>(h_ * w_);
        for (std::size_t k = 0; k < h_ * wc_; ++k) {
            const double g = scale / (lambda - eta * symbol_[k]);
            spec_[k][0] *= g;
            spec_[k][1] *= g;
        }
        fftw_execute(inverse_.get());
        return ScalarField(h_, w_, std::vector<double>(real_.get(), real_.get() + h_ * w_));
    }

private:
    std::size_t h_, w_, wc_;
    detail::FftwBuffer<double> real_;
    detail::FftwBuffer<fftw_complex> spec_;
    detail::Plan forward_, inverse_;
    std::vector<double> symbol_;
};

class ReflectedScreenedPoisson {
public:
    ReflectedScreenedPoisson(std::size_t height, std::size_t width)
        : h_(height), w_(width), buf_(detail::fftw_buffer<double>(height * width)) {
        std::lock_guard lock(detail::fftw_planner_mutex());
        const int hh = static_cast<int>(h_), ww = static_cast<int>(w_);
        forward_.reset(fftw_plan_r2r_2d(hh, ww, buf_.get(), buf_.get(), FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE));
        inverse_.reset(fftw_plan_r2r_2d(hh, ww, buf_.get(), buf_.get(), FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE));
        symbol_.resize(h_ * w_);
        for (std::size_t k = 0; k < h_; ++k) {
            const double sk = detail::second_difference_symbol(std::numbers::pi * double(k) / double(h_));
            for (std::size_t l = 0; l < w_; ++l) {
                symbol_[k * w_ + l] = sk + detail::second_difference_symbol(std::numbers::pi * double(l) / double(w_));
            }
        }
    }

    ScalarField solve(const ScalarField& rhs, double lambda, double eta) {
        std::copy(rhs.begin(), rhs.end(), buf_.get());
        fftw_execute(forward_.get());
        // REDFT10 followed by REDFT01 scales by 2H * 2W.
        const double scale = 1.0 / static_cast<double>(4 * h_ * w_);
        for (std::size_t k = 0; k < h_ * w_; ++k) buf_[k] *= scale / (lambda - eta * symbol_[k]);
        fftw_execute(inverse_.get());
        return ScalarField(h_, w_, std::vector<double>(buf_.get(), buf_.get() + h_ * w_));
    }

private:
    std::size_t h_, w_;
    detail::FftwBuffer<double> buf_;
    detail::Plan forward_, inverse_;
    std::vector<double> symbol_;
};

}  // namespace texdecomp
