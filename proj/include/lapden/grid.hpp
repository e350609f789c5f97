#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "lapden/error.hpp"

namespace lapden {

/// Samples of a real function at equidistant nodes x_k = a + k*h, k = 0..size()-1.
struct Signal1D {
    std::vector<double> values;
    double h = 1.0;
    double a = 0.0;
    double b = 0.0;

    Signal1D() = default;
    explicit Signal1D(std::vector<double> v, double spacing = 1.0, double left = 0.0)
        : values(std::move(v)), h(spacing), a(left) {
        b = a + h * static_cast<double>(values.empty() ? 0 : values.size() - 1);
    }

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double node(std::size_t k) const noexcept { return a + h * static_cast<double>(k); }
    [[nodiscard]] std::span<const double> view() const noexcept { return values; }
    [[nodiscard]] Signal1D with_values(std::vector<double> v) const {
        Signal1D s = *this;
        s.values = std::move(v);
        return s;
    }
};

/// Row-major samples on a uniform rectangular grid with spacing h in both directions.
struct Field2D {
    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t cols = 0;
    double h = 1.0;

    Field2D() = default;
    Field2D(std::size_t r, std::size_t c, double spacing = 1.0, double fill = 0.0)
        : values(r * c, fill), rows(r), cols(c), h(spacing) {}
    Field2D(std::size_t r, std::size_t c, std::vector<double> v, double spacing = 1.0)
        : values(std::move(v)), rows(r), cols(c), h(spacing) {
        if (values.size() != rows * cols) {
            throw DimensionMismatch("Field2D: value count does not match rows*cols");
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double& operator()(std::size_t i, std::size_t j) noexcept { return values[i * cols + j]; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return values[i * cols + j]; }
    [[nodiscard]] std::span<const double> view() const noexcept { return values; }
    [[nodiscard]] bool same_shape(const Field2D& o) const noexcept { return rows == o.rows && cols == o.cols; }
    [[nodiscard]] Field2D with_values(std::vector<double> v) const {
        Field2D f = *this;
        f.values = std::move(v);
        return f;
    }
};

/// Unweighted Euclidean norm.
inline double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double dot(std::span<const double> x, std::span<const double> y) {
    return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

inline double distance2(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace lapden
