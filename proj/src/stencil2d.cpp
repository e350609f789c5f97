#include "lapden/stencil2d.hpp"

#include <string>

#include "lapden/parallel.hpp"

namespace lapden {
namespace {

// Below this many nodes a stencil pass is too cheap to be worth splitting across threads.
constexpr std::size_t kParallelNodes = 1u << 16;

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows < 3 || cols < 3) {
        throw InvalidSize("five-point Laplacian needs at least 3x3 nodes, got " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    }
}

void laplacian_rows(std::span<const double> in, std::size_t rows, std::size_t cols, double inv_h2,
                    Stencil2DKind kind, std::span<double> out, std::size_t row_begin, std::size_t row_end) {
    const bool mirror = kind == Stencil2DKind::NeumannMirror;
    auto at = [&](std::size_t i, std::size_t j) { return in[i * cols + j]; };
    for (std::size_t i = row_begin; i < row_end; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double c = at(i, j);
            double up, down, left, right;
            if (i > 0) {
                up = at(i - 1, j);
            } else {
                up = mirror ? at(1, j) : 0.0;
            }
            if (i + 1 < rows) {
                down = at(i + 1, j);
            } else {
                down = mirror ? at(rows - 2, j) : 0.0;
            }
            if (j > 0) {
                left = at(i, j - 1);
            } else {
                left = mirror ? at(i, 1) : 0.0;
            }
            if (j + 1 < cols) {
                right = at(i, j + 1);
            } else {
                right = mirror ? at(i, cols - 2) : 0.0;
            }
            out[i * cols + j] = (up + down + left + right - 4.0 * c) * inv_h2;
        }
    }
}

}  // namespace

void laplacian_2d_into(std::span<const double> in, std::size_t rows, std::size_t cols, double h,
                       Stencil2DKind kind, std::span<double> out) {
    check_shape(rows, cols);
    if (in.size() != rows * cols || out.size() != rows * cols) {
        throw DimensionMismatch("laplacian_2d: buffer size does not match grid shape");
    }
    if (!(h > 0.0)) throw InvalidParameter("grid spacing must be positive");
    const double inv_h2 = 1.0 / (h * h);
    if (rows * cols < kParallelNodes) {
        laplacian_rows(in, rows, cols, inv_h2, kind, out, 0, rows);
        return;
    }
    parallel_for_rows(rows, 32, [&](std::size_t begin, std::size_t end) {
        laplacian_rows(in, rows, cols, inv_h2, kind, out, begin, end);
    });
}

Field2D laplacian_2d(const Field2D& u, Stencil2DKind kind) {
    check_shape(u.rows, u.cols);
    Field2D out(u.rows, u.cols, u.h);
    laplacian_2d_into(u.values, u.rows, u.cols, u.h, kind, out.values);
    return out;
}

}  // namespace lapden
