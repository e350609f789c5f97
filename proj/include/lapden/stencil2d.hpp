#pragma once

#include <span>

#include "lapden/grid.hpp"

namespace lapden {

/// Boundary closure of the five-point Laplacian.
enum class Stencil2DKind {
    NeumannMirror,  ///< ghost u(-1,j) = u(1,j): zero normal derivative
    DirichletZero,  ///< ghost values are zero: operand vanishes just outside the grid
};

/// Five-point Laplacian (u_W + u_E + u_N + u_S - 4u)/h^2 with the given closure.
/// Requires at least 3 rows and 3 columns.
Field2D laplacian_2d(const Field2D& u, Stencil2DKind kind);

/// Buffer form of laplacian_2d used by the time steppers. `out` must not alias `in`.
void laplacian_2d_into(std::span<const double> in, std::size_t rows, std::size_t cols, double h,
                       Stencil2DKind kind, std::span<double> out);

}  // namespace lapden
