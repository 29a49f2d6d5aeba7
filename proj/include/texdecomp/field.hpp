#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace texdecomp {

/// Raised when an iterate picks up NaN or Inf. Indicates invalid parameters
/// or a bug; solvers never return non-finite data.
class NonFiniteError : public std::runtime_error {
public:
    explicit NonFiniteError(const std::string& where)
        : std::runtime_error("non-finite value encountered in " + where) {}
};

/// Raised on parameter sets that violate a solver's preconditions.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * ScalarField: H x W grid of doubles, row-major.
 *
 * Index (i, j) is (row, column). Axis 1 runs along rows (i), axis 2 along
 * columns (j). Values are intensities in [0,1] for images read from disk;
 * intermediates (texture layers, dual variables) are unbounded.
 */
class ScalarField {
public:
    ScalarField() = default;

    ScalarField(std::size_t height, std::size_t width, double value = 0.0)
        : height_(height), width_(width), data_(checked_size(height, width), value) {}

    ScalarField(std::size_t height, std::size_t width, std::vector<double> data)
        : height_(height), width_(width), data_(std::move(data)) {
        if (data_.size() != checked_size(height, width)) {
            throw std::invalid_argument("ScalarField: data length " + std::to_string(data_.size()) +
                                        " does not match " + std::to_string(height) + "x" +
                                        std::to_string(width));
        }
    }

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * width_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * width_ + j]; }

    double& operator[](std::size_t k) noexcept { return data_[k]; }
    double operator[](std::size_t k) const noexcept { return data_[k]; }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }
    const std::vector<double>& vector() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    bool same_shape(const ScalarField& other) const noexcept {
        return height_ == other.height_ && width_ == other.width_;
    }

    bool all_finite() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
    }

    void fill(double value) { std::fill(data_.begin(), data_.end(), value); }

    ScalarField& operator+=(const ScalarField& rhs) {
        require_same_shape(rhs, "+=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& rhs) {
        require_same_shape(rhs, "-=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
        return *this;
    }
    ScalarField& operator*=(double s) noexcept {
        for (double& x : data_) x *= s;
        return *this;
    }

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }
    friend ScalarField operator*(ScalarField a, double s) { return a *= s; }

    friend bool operator==(const ScalarField&, const ScalarField&) = default;

    void require_same_shape(const ScalarField& other, const char* what) const {
        if (!same_shape(other)) {
            throw std::invalid_argument(std::string("ScalarField shape mismatch in ") + what);
        }
    }

private:
    static std::size_t checked_size(std::size_t height, std::size_t width) {
        if (height == 0 || width == 0) {
            throw std::invalid_argument("ScalarField: dimensions must be positive");
        }
        return height * width;
    }

    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<double> data_;
};

/// Pair of equally sized scalar fields: comp1 along rows, comp2 along columns.
struct VectorField {
    ScalarField comp1;
    ScalarField comp2;

    VectorField() = default;
    VectorField(std::size_t height, std::size_t width, double value = 0.0)
        : comp1(height, width, value), comp2(height, width, value) {}
    VectorField(ScalarField c1, ScalarField c2) : comp1(std::move(c1)), comp2(std::move(c2)) {
        comp1.require_same_shape(comp2, "VectorField");
    }

    std::size_t height() const noexcept { return comp1.height(); }
    std::size_t width() const noexcept { return comp1.width(); }
    bool all_finite() const noexcept { return comp1.all_finite() && comp2.all_finite(); }

    VectorField& operator+=(const VectorField& rhs) {
        comp1 += rhs.comp1;
        comp2 += rhs.comp2;
        return *this;
    }
    VectorField& operator-=(const VectorField& rhs) {
        comp1 -= rhs.comp1;
        comp2 -= rhs.comp2;
        return *this;
    }
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }

    friend bool operator==(const VectorField&, const VectorField&) = default;
};

inline void require_finite(const ScalarField& f, const char* where) {
    if (!f.all_finite()) throw NonFiniteError(where);
}

inline void require_finite(const VectorField& p, const char* where) {
    if (!p.all_finite()) throw NonFiniteError(where);
}

}  // namespace texdecomp
