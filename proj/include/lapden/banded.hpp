#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lapden {

/// One diagonal of a banded matrix. `offset` > 0 is above the main diagonal.
/// `values[k]` holds entry (k, k+offset) for offset >= 0 and (k-offset, k) for offset < 0,
/// so every band has n - |offset| entries.
struct Band {
    std::ptrdiff_t offset = 0;
    std::vector<double> values;
};

/// Square matrix stored by diagonals. Entries already include any 1/h^2 scaling;
/// `spacing_scale()` records that factor for reference.
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(std::size_t n, std::vector<Band> bands, double spacing_scale = 1.0);

    static BandedMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] const std::vector<Band>& bands() const noexcept { return bands_; }
    [[nodiscard]] double spacing_scale() const noexcept { return spacing_scale_; }
    [[nodiscard]] std::size_t lower_bandwidth() const noexcept;
    [[nodiscard]] std::size_t upper_bandwidth() const noexcept;

    /// Entry (i, j); zero outside the stored bands.
    [[nodiscard]] double entry(std::size_t i, std::size_t j) const noexcept;
    [[nodiscard]] bool is_symmetric() const noexcept;

private:
    std::size_t n_ = 0;
    std::vector<Band> bands_;  // sorted by offset, unique
    double spacing_scale_ = 1.0;
};

/// Neumann second-difference matrix (1/h^2) tridiag(1,-2,1) with first row (-1, 1, 0, ...)
/// and last row (..., 0, 1, -1). Symmetric, rows sum to zero.
BandedMatrix build_d0(std::size_t n_interior, double h);

/// Dirichlet second-difference matrix (1/h^2) tridiag(1,-2,1). Symmetric negative definite.
BandedMatrix build_d1(std::size_t n_interior, double h);

/// y = M x in O(bandwidth * n).
std::vector<double> apply_banded(const BandedMatrix& m, std::span<const double> x);
void apply_banded_into(const BandedMatrix& m, std::span<const double> x, std::span<double> y);

/// Banded product A*B; the result's bandwidths are the sums of the operands'.
BandedMatrix multiply(const BandedMatrix& a, const BandedMatrix& b);

/// alpha*A + beta*B.
BandedMatrix combine(double alpha, const BandedMatrix& a, double beta, const BandedMatrix& b);

/// LU factorization with partial pivoting restricted to the band (LAPACK gbtrf layout).
class BandedLU {
public:
    explicit BandedLU(const BandedMatrix& m);

    [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;
    [[nodiscard]] std::size_t n() const noexcept { return n_; }

private:
    std::size_t n_ = 0;
    std::size_t kl_ = 0;
    std::size_t ku_ = 0;
    std::size_t ld_ = 0;             // rows of band storage: 2*kl + ku + 1
    std::vector<double> ab_;          // column-major band storage
    std::vector<std::size_t> pivots_;

    double& at(std::size_t i, std::size_t j) { return ab_[j * ld_ + (kl_ + ku_ + i - j)]; }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return ab_[j * ld_ + (kl_ + ku_ + i - j)]; }
};

/// Solves M x = rhs. Throws SingularSystem when a pivot vanishes to tolerance.
std::vector<double> solve_banded(const BandedMatrix& m, std::span<const double> rhs);

}  // namespace lapden
