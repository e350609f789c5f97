#pragma once

// Dense reference implementations used only by the tests. They follow the ghost-node
// definitions directly and share no code with the library's banded/stencil paths.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense zeros(std::size_t n, std::size_t m) { return Dense(n, std::vector<double>(m, 0.0)); }

// Column j of a linear operator is the operator applied to the j-th unit vector.
inline Dense columns_of(std::size_t n, const std::function<std::vector<double>(const std::vector<double>&)>& op) {
    Dense a = zeros(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        const auto col = op(e);
        for (std::size_t i = 0; i < n; ++i) a[i][j] = col[i];
    }
    return a;
}

// Centered second difference with ghost values supplied by `ghost(side, u)`.
inline std::vector<double> second_difference(const std::vector<double>& u, double h,
                                             const std::function<double(int, const std::vector<double>&)>& ghost) {
    const std::size_t n = u.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i == 0 ? ghost(-1, u) : u[i - 1];
        const double right = i + 1 == n ? ghost(+1, u) : u[i + 1];
        out[i] = (left - 2.0 * u[i] + right) / (h * h);
    }
    return out;
}

// Neumann closure by identifying the ghost with its neighbour: u(x_0) = u(x_1), u(x_N) = u(x_{N-1}).
inline Dense d0_dense(std::size_t n, double h) {
    return columns_of(n, [h](const std::vector<double>& u) {
        return second_difference(u, h, [](int side, const std::vector<double>& v) {
            return side < 0 ? v.front() : v.back();
        });
    });
}

// Dirichlet closure: the operand vanishes at the ghosts.
inline Dense d1_dense(std::size_t n, double h) {
    return columns_of(n, [h](const std::vector<double>& u) {
        return second_difference(u, h, [](int, const std::vector<double>&) { return 0.0; });
    });
}

inline std::vector<double> matvec(const Dense& a, const std::vector<double>& x) {
    std::vector<double> y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    }
    return y;
}

inline Dense matmul(const Dense& a, const Dense& b) {
    Dense c = zeros(a.size(), b.front().size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b.front().size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

// Gaussian elimination with full-column partial pivoting.
inline std::vector<double> gauss_solve(Dense a, std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
        if (a[p][k] == 0.0) throw std::runtime_error("oracle: singular matrix");
        std::swap(a[k], a[p]);
        std::swap(b[k], b[p]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

// Dense five-point Laplacian on an r x c grid (row-major). `mirror` selects
// ghost(-1) = node(1); otherwise ghosts are zero.
inline Dense laplacian_2d_dense(std::size_t r, std::size_t c, double h, bool mirror) {
    const std::size_t n = r * c;
    Dense a = zeros(n, n);
    const double s = 1.0 / (h * h);
    auto idx = [c](std::size_t i, std::size_t j) { return i * c + j; };
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            const std::size_t row = idx(i, j);
            a[row][row] -= 4.0 * s;
            const long di[4] = {-1, 1, 0, 0};
            const long dj[4] = {0, 0, -1, 1};
            for (int k = 0; k < 4; ++k) {
                long ii = static_cast<long>(i) + di[k];
                long jj = static_cast<long>(j) + dj[k];
                const bool outside = ii < 0 || jj < 0 || ii >= static_cast<long>(r) || jj >= static_cast<long>(c);
                if (outside && !mirror) continue;
                if (ii < 0) ii = 1;
                if (ii >= static_cast<long>(r)) ii = static_cast<long>(r) - 2;
                if (jj < 0) jj = 1;
                if (jj >= static_cast<long>(c)) jj = static_cast<long>(c) - 2;
                a[row][idx(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj))] += s;
            }
        }
    }
    return a;
}

inline double flux(double w, double eps, double p) { return w / std::pow(w * w + eps, p); }

// One explicit Euler step of du/dt = -Outer flux(Inner u) - lambda (u - u0) with dense operators.
inline std::vector<double> euler_step_dense(const Dense& outer, const Dense& inner, const std::vector<double>& u,
                                            const std::vector<double>& u0, double eps, double p, double lambda,
                                            double dt) {
    auto w = matvec(inner, u);
    for (double& v : w) v = flux(v, eps, p);
    const auto g = matvec(outer, w);
    std::vector<double> out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = u[k] - dt * (g[k] + lambda * (u[k] - u0[k]));
    return out;
}

// 1D TV right-hand side written face by face from the definition.
inline std::vector<double> tv_rhs_1d(const std::vector<double>& u, const std::vector<double>& u0, double h,
                                     double beta, double lambda) {
    const long n = static_cast<long>(u.size());
    auto node = [&](long k) {
        if (k == -1) return u[1];
        if (k == n) return u[static_cast<std::size_t>(n - 2)];
        return u[static_cast<std::size_t>(k)];
    };
    auto face = [&](long left) {  // flux between node `left` and `left + 1`
        const double d = (node(left + 1) - node(left)) / h;
        return d / std::sqrt(d * d + beta);
    };
    std::vector<double> out(u.size());
    for (long k = 0; k < n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        out[kk] = (face(k) - face(k - 1)) / h - lambda * (u[kk] - u0[kk]);
    }
    return out;
}

// 2D TV right-hand side: isotropic face gradients, tangential part averaged from the two
// adjacent nodes' centered differences; mirror ghosts on all sides.
inline std::vector<double> tv_rhs_2d(const std::vector<double>& u, const std::vector<double>& u0, std::size_t r,
                                     std::size_t c, double h, double beta, double lambda) {
    auto node = [&](long i, long j) {
        if (i == -1) i = 1;
        if (i == static_cast<long>(r)) i = static_cast<long>(r) - 2;
        if (j == -1) j = 1;
        if (j == static_cast<long>(c)) j = static_cast<long>(c) - 2;
        return u[static_cast<std::size_t>(i) * c + static_cast<std::size_t>(j)];
    };
    // Face between (i, j) and (i, j+1).
    auto fx = [&](long i, long j) {
        const double d = (node(i, j + 1) - node(i, j)) / h;
        const double t = ((node(i + 1, j) - node(i - 1, j)) / (2 * h) + (node(i + 1, j + 1) - node(i - 1, j + 1)) / (2 * h)) / 2;
        return d / std::sqrt(d * d + t * t + beta);
    };
    // Face between (i, j) and (i+1, j).
    auto fy = [&](long i, long j) {
        const double d = (node(i + 1, j) - node(i, j)) / h;
        const double t = ((node(i, j + 1) - node(i, j - 1)) / (2 * h) + (node(i + 1, j + 1) - node(i + 1, j - 1)) / (2 * h)) / 2;
        return d / std::sqrt(d * d + t * t + beta);
    };
    std::vector<double> out(u.size());
    for (long i = 0; i < static_cast<long>(r); ++i) {
        for (long j = 0; j < static_cast<long>(c); ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * c + static_cast<std::size_t>(j);
            out[k] = (fx(i, j) - fx(i, j - 1) + fy(i, j) - fy(i - 1, j)) / h - lambda * (u[k] - u0[k]);
        }
    }
    return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

inline double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

}  // namespace oracle

namespace oracle {
inline bool dot_check_negative(const std::vector<double>& x, const std::vector<double>& ax) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * ax[k];
    return s < 0.0;
}
}  // namespace oracle
