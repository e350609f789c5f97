#include "lapden/banded.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "lapden/error.hpp"

namespace lapden {
namespace {

std::size_t band_length(std::size_t n, std::ptrdiff_t offset) {
    const auto o = static_cast<std::size_t>(std::abs(offset));
    return o >= n ? 0 : n - o;
}

// Row range [first, last) for which entry (i, i+offset) lies inside the matrix.
std::pair<std::size_t, std::size_t> band_rows(std::size_t n, std::ptrdiff_t offset) {
    if (offset >= 0) return {0, band_length(n, offset)};
    return {static_cast<std::size_t>(-offset), n};
}

BandedMatrix from_map(std::size_t n, std::map<std::ptrdiff_t, std::vector<double>>& acc, double scale) {
    std::vector<Band> bands;
    bands.reserve(acc.size());
    for (auto& [offset, values] : acc) bands.push_back(Band{offset, std::move(values)});
    return BandedMatrix(n, std::move(bands), scale);
}

void check_second_difference_args(std::size_t n, double h) {
    if (n < 2) throw InvalidSize("second-difference matrix needs at least 2 nodes, got " + std::to_string(n));
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidParameter("grid spacing must be positive and finite");
}

BandedMatrix second_difference(std::size_t n, double h, double corner) {
    check_second_difference_args(n, h);
    const double s = 1.0 / (h * h);
    std::vector<double> diag(n, -2.0 * s);
    diag.front() = corner * s;
    diag.back() = corner * s;
    std::vector<double> off(n - 1, s);
    return BandedMatrix(n, {Band{-1, off}, Band{0, std::move(diag)}, Band{1, off}}, s);
}

}  // namespace

BandedMatrix::BandedMatrix(std::size_t n, std::vector<Band> bands, double spacing_scale)
    : n_(n), spacing_scale_(spacing_scale) {
    std::sort(bands.begin(), bands.end(), [](const Band& x, const Band& y) { return x.offset < y.offset; });
    for (auto& band : bands) {
        if (band.values.size() != band_length(n, band.offset)) {
            throw DimensionMismatch("band at offset " + std::to_string(band.offset) + " has " +
                                    std::to_string(band.values.size()) + " entries, expected " +
                                    std::to_string(band_length(n, band.offset)));
        }
        if (!bands_.empty() && bands_.back().offset == band.offset) {
            throw InvalidParameter("duplicate band offset " + std::to_string(band.offset));
        }
        bands_.push_back(std::move(band));
    }
}

BandedMatrix BandedMatrix::identity(std::size_t n) {
    return BandedMatrix(n, {Band{0, std::vector<double>(n, 1.0)}});
}

std::size_t BandedMatrix::lower_bandwidth() const noexcept {
    std::size_t kl = 0;
    for (const auto& b : bands_) {
        if (b.offset < 0) kl = std::max(kl, static_cast<std::size_t>(-b.offset));
    }
    return kl;
}

std::size_t BandedMatrix::upper_bandwidth() const noexcept {
    std::size_t ku = 0;
    for (const auto& b : bands_) {
        if (b.offset > 0) ku = std::max(ku, static_cast<std::size_t>(b.offset));
    }
    return ku;
}

double BandedMatrix::entry(std::size_t i, std::size_t j) const noexcept {
    if (i >= n_ || j >= n_) return 0.0;
    const auto offset = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
    for (const auto& b : bands_) {
        if (b.offset == offset) return b.values[std::min(i, j)];
    }
    return 0.0;
}

bool BandedMatrix::is_symmetric() const noexcept {
    for (const auto& b : bands_) {
        if (b.offset <= 0) continue;
        bool found = false;
        for (const auto& mirror : bands_) {
            if (mirror.offset != -b.offset) continue;
            found = true;
            if (mirror.values != b.values) return false;
        }
        if (!found && std::any_of(b.values.begin(), b.values.end(), [](double v) { return v != 0.0; })) {
            return false;
        }
    }
    return true;
}

BandedMatrix build_d0(std::size_t n_interior, double h) { return second_difference(n_interior, h, -1.0); }

BandedMatrix build_d1(std::size_t n_interior, double h) { return second_difference(n_interior, h, -2.0); }

void apply_banded_into(const BandedMatrix& m, std::span<const double> x, std::span<double> y) {
    const std::size_t n = m.n();
    if (x.size() != n || y.size() != n) {
        throw DimensionMismatch("apply_banded: vector length " + std::to_string(x.size()) +
                                " does not match matrix dimension " + std::to_string(n));
    }
    std::fill(y.begin(), y.end(), 0.0);
    for (const auto& band : m.bands()) {
        const auto [first, last] = band_rows(n, band.offset);
        for (std::size_t i = first; i < last; ++i) {
            const std::size_t j = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + band.offset);
            y[i] += band.values[std::min(i, j)] * x[j];
        }
    }
}

std::vector<double> apply_banded(const BandedMatrix& m, std::span<const double> x) {
    std::vector<double> y(m.n());
    apply_banded_into(m, x, y);
    return y;
}

BandedMatrix multiply(const BandedMatrix& a, const BandedMatrix& b) {
    if (a.n() != b.n()) throw DimensionMismatch("multiply: matrix dimensions differ");
    const std::size_t n = a.n();
    std::map<std::ptrdiff_t, std::vector<double>> acc;
    for (const auto& ba : a.bands()) {
        for (const auto& bb : b.bands()) {
            const std::ptrdiff_t offset = ba.offset + bb.offset;
            const std::size_t len = band_length(n, offset);
            if (len == 0) continue;
            auto& out = acc.try_emplace(offset, len, 0.0).first->second;
            const auto [first, last] = band_rows(n, ba.offset);
            for (std::size_t i = first; i < last; ++i) {
                const auto jp = static_cast<std::ptrdiff_t>(i) + ba.offset;
                const auto kp = jp + bb.offset;
                if (kp < 0 || kp >= static_cast<std::ptrdiff_t>(n)) continue;
                const auto j = static_cast<std::size_t>(jp);
                const auto k = static_cast<std::size_t>(kp);
                out[std::min(i, k)] += ba.values[std::min(i, j)] * bb.values[std::min(j, k)];
            }
        }
    }
    return from_map(n, acc, a.spacing_scale() * b.spacing_scale());
}

BandedMatrix combine(double alpha, const BandedMatrix& a, double beta, const BandedMatrix& b) {
    if (a.n() != b.n()) throw DimensionMismatch("combine: matrix dimensions differ");
    std::map<std::ptrdiff_t, std::vector<double>> acc;
    auto accumulate = [&](double w, const BandedMatrix& m) {
        for (const auto& band : m.bands()) {
            auto& out = acc.try_emplace(band.offset, band.values.size(), 0.0).first->second;
            for (std::size_t k = 0; k < band.values.size(); ++k) out[k] += w * band.values[k];
        }
    };
    accumulate(alpha, a);
    accumulate(beta, b);
    return from_map(a.n(), acc, 1.0);
}

BandedLU::BandedLU(const BandedMatrix& m)
    : n_(m.n()), kl_(m.lower_bandwidth()), ku_(m.upper_bandwidth()), pivots_(m.n()) {
    ld_ = 2 * kl_ + ku_ + 1;
    ab_.assign(ld_ * n_, 0.0);
    double scale = 0.0;
    for (const auto& band : m.bands()) {
        const auto [first, last] = band_rows(n_, band.offset);
        for (std::size_t i = first; i < last; ++i) {
            const std::size_t j = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + band.offset);
            const double v = band.values[std::min(i, j)];
            at(i, j) = v;
            scale = std::max(scale, std::abs(v));
        }
    }
    const double tiny = 1e-14 * scale;
    std::size_t ju = 0;
    for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t km = std::min(kl_, n_ - 1 - j);
        std::size_t jp = 0;
        double best = std::abs(at(j, j));
        for (std::size_t k = 1; k <= km; ++k) {
            const double v = std::abs(at(j + k, j));
            if (v > best) {
                best = v;
                jp = k;
            }
        }
        pivots_[j] = j + jp;
        if (!(best > tiny)) {
            throw SingularSystem("banded LU: pivot " + std::to_string(j) + " is zero to tolerance");
        }
        ju = std::max(ju, std::min(j + ku_ + jp, n_ - 1));
        if (jp != 0) {
            for (std::size_t c = j; c <= ju; ++c) std::swap(at(j, c), at(j + jp, c));
        }
        const double pivot = at(j, j);
        for (std::size_t k = 1; k <= km; ++k) at(j + k, j) /= pivot;
        for (std::size_t c = j + 1; c <= ju; ++c) {
            const double ujc = at(j, c);
            if (ujc == 0.0) continue;
            for (std::size_t k = 1; k <= km; ++k) at(j + k, c) -= at(j + k, j) * ujc;
        }
    }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
    if (rhs.size() != n_) throw DimensionMismatch("banded solve: right-hand side length mismatch");
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t j = 0; j + 1 < n_; ++j) {
        const std::size_t lm = std::min(kl_, n_ - 1 - j);
        if (pivots_[j] != j) std::swap(x[j], x[pivots_[j]]);
        for (std::size_t k = 1; k <= lm; ++k) x[j + k] -= at(j + k, j) * x[j];
    }
    const std::size_t kv = kl_ + ku_;
    for (std::size_t jj = n_; jj-- > 0;) {
        x[jj] /= at(jj, jj);
        const std::size_t first = jj > kv ? jj - kv : 0;
        for (std::size_t i = first; i < jj; ++i) x[i] -= at(i, jj) * x[jj];
    }
    return x;
}

std::vector<double> solve_banded(const BandedMatrix& m, std::span<const double> rhs) {
    if (rhs.size() != m.n()) throw DimensionMismatch("solve_banded: right-hand side length mismatch");
    return BandedLU(m).solve(rhs);
}

}  // namespace lapden
