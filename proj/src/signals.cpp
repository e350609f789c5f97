#include "lapden/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lapden/error.hpp"

namespace lapden {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform in (0, 1] from the top 53 bits of the hash of (seed, counter).
double uniform_open_closed(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t bits = splitmix64(splitmix64(seed) ^ (counter * 0xd1b54a32d192ed03ULL)) >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

template <class Data>
Data add_noise_impl(const Data& clean, const NoiseSpec& spec) {
    if (!std::isfinite(spec.delta_rel) || spec.delta_rel < 0.0) {
        throw InvalidParameter("delta_rel must be finite and non-negative");
    }
    if (spec.delta_rel == 0.0) return clean;
    const double clean_norm = norm2(clean.values);
    if (clean_norm == 0.0) throw DegenerateInput("cannot scale relative noise against a zero-norm signal");
    const auto e = gaussian_noise(clean.size(), spec);
    const double scale = spec.delta_rel * clean_norm / norm2(e);
    Data out = clean;
    for (std::size_t k = 0; k < out.size(); ++k) out.values[k] += scale * e[k];
    return out;
}

// Calls fn(|difference|) for every first difference along both axes.
template <class Fn>
void for_each_diff(const Field2D& u, Fn&& fn) {
    for (std::size_t i = 0; i < u.rows; ++i) {
        for (std::size_t j = 0; j + 1 < u.cols; ++j) fn(std::abs(u(i, j + 1) - u(i, j)));
    }
    for (std::size_t i = 0; i + 1 < u.rows; ++i) {
        for (std::size_t j = 0; j < u.cols; ++j) fn(std::abs(u(i + 1, j) - u(i, j)));
    }
}

void fill_common(Metrics& m, std::span<const double> u, std::span<const double> ref) {
    const double ref_norm = norm2(ref);
    if (ref_norm == 0.0) throw DegenerateInput("reference has zero norm");
    const double err = distance2(u, ref);
    m.rel_err = err / ref_norm;
    m.rmse = err / std::sqrt(static_cast<double>(u.size()));
    const auto [lo, hi] = std::minmax_element(ref.begin(), ref.end());
    const double range = *hi - *lo;
    if (range > 0.0 && m.rmse > 0.0) m.psnr_db = 20.0 * std::log10(range / m.rmse);
}

}  // namespace

Signal1D sample_f_sine(std::size_t n) {
    if (n < 4) throw InvalidSize("sine sampling needs n >= 4");
    std::vector<double> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(n);
        v[i] = std::sin(2.0 * std::numbers::pi * x);
    }
    return Signal1D(std::move(v), 1.0 / static_cast<double>(n), 0.0);
}

Signal1D sample_g_jumps(std::size_t n) {
    if (n < 10) throw InvalidSize("jump-function sampling needs n >= 10");
    std::vector<double> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(n);
        v[i] = std::sin(2.0 * std::numbers::pi * x) + sign(x - 0.2) - sign(x - 0.4) + sign(x - 0.6) - sign(x - 0.8);
    }
    return Signal1D(std::move(v), 1.0 / static_cast<double>(n), 0.0);
}

Field2D sample_f2d(std::size_t n) {
    if (n < 4) throw InvalidSize("2D sampling needs n >= 4");
    const double step = 2.0 / static_cast<double>(n - 1);
    Field2D f(n, n, step);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            const double y = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(n - 1);
            f(i, j) = x * std::sin(std::numbers::pi * y);
        }
    }
    return f;
}

std::vector<double> gaussian_noise(std::size_t len, const NoiseSpec& spec) {
    std::vector<double> out(len);
    for (std::size_t k = 0; k < len; k += 2) {
        const std::uint64_t pair = k / 2;
        const double u1 = uniform_open_closed(spec.seed, 2 * pair);
        const double u2 = uniform_open_closed(spec.seed, 2 * pair + 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        out[k] = r * std::cos(theta);
        if (k + 1 < len) out[k + 1] = r * std::sin(theta);
    }
    return out;
}

Signal1D add_noise(const Signal1D& clean, const NoiseSpec& spec) { return add_noise_impl(clean, spec); }
Field2D add_noise(const Field2D& clean, const NoiseSpec& spec) { return add_noise_impl(clean, spec); }

double default_tau(const Signal1D& clean) {
    if (clean.size() < 2) throw InvalidSize("signal needs at least 2 samples");
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < clean.size(); ++k) sum += std::abs(clean.values[k + 1] - clean.values[k]);
    return 0.1 * sum / static_cast<double>(clean.size() - 1);
}

double default_tau(const Field2D& clean) {
    double sum = 0.0;
    std::size_t terms = 0;
    for_each_diff(clean, [&](double d) {
        sum += d;
        ++terms;
    });
    if (terms == 0) throw InvalidSize("field needs at least 2 samples along an axis");
    return 0.1 * sum / static_cast<double>(terms);
}

double plateau_fraction(const Signal1D& u, double tau) {
    if (u.size() < 2) throw InvalidSize("signal needs at least 2 samples");
    std::size_t flat = 0;
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
        if (std::abs(u.values[k + 1] - u.values[k]) < tau) ++flat;
    }
    return static_cast<double>(flat) / static_cast<double>(u.size() - 1);
}

double plateau_fraction(const Field2D& u, double tau) {
    std::size_t flat = 0, terms = 0;
    for_each_diff(u, [&](double d) {
        if (d < tau) ++flat;
        ++terms;
    });
    if (terms == 0) throw InvalidSize("field needs at least 2 samples along an axis");
    return static_cast<double>(flat) / static_cast<double>(terms);
}

std::size_t count_jumps(const Signal1D& u, double threshold) {
    std::size_t count = 0;
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
        if (std::abs(u.values[k + 1] - u.values[k]) > threshold) ++count;
    }
    return count;
}

Metrics compute_metrics(const Signal1D& u, const Signal1D& ref, double tau) {
    if (u.size() != ref.size()) throw DimensionMismatch("metrics: signals differ in length");
    Metrics m;
    fill_common(m, u.values, ref.values);
    m.plateau_fraction = plateau_fraction(u, tau);
    for (std::size_t k = 1; k + 1 < u.size(); ++k) {
        m.curvature_mass += std::abs(u.values[k - 1] - 2.0 * u.values[k] + u.values[k + 1]);
    }
    return m;
}

Metrics compute_metrics(const Field2D& u, const Field2D& ref, double tau) {
    if (!u.same_shape(ref)) throw DimensionMismatch("metrics: fields differ in shape");
    Metrics m;
    fill_common(m, u.values, ref.values);
    m.plateau_fraction = plateau_fraction(u, tau);
    for (std::size_t i = 1; i + 1 < u.rows; ++i) {
        for (std::size_t j = 1; j + 1 < u.cols; ++j) {
            m.curvature_mass += std::abs(u(i - 1, j) + u(i + 1, j) + u(i, j - 1) + u(i, j + 1) - 4.0 * u(i, j));
        }
    }
    return m;
}

}  // namespace lapden
