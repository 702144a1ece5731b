#pragma once
//
// Singular values of dense complex matrices, Schatten (quasi)norms, weak
// Schatten quasinorms and singular-value decay fits.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "multipliers.hpp"
#include "operator_matrix.hpp"

namespace nctorus {

/// Nonincreasing, nonnegative singular values mu(0) >= mu(1) >= ...
struct SingularSpectrum {
    std::vector<double> values;
    std::size_t source_dim = 0;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t k) const { return values[k]; }
};

inline SingularSpectrum make_spectrum(std::vector<double> values)
{
    for (double& v : values)
        v = std::abs(v);
    std::sort(values.begin(), values.end(), std::greater<>());
    const std::size_t n = values.size();
    return {std::move(values), n};
}

namespace detail {

inline bool is_diagonal(const ComplexMatrix& a)
{
    for (Eigen::Index c = 0; c < a.cols(); ++c)
        for (Eigen::Index r = 0; r < a.rows(); ++r)
            if (r != c && a(r, c) != cplx{})
                return false;
    return true;
}

// One-sided (Hestenes) Jacobi: rotate column pairs of A until they are mutually
// orthogonal; the column norms are then the singular values.
inline std::vector<double> jacobi_singular_values(ComplexMatrix a)
{
    const Eigen::Index n = a.cols();
    constexpr double tol = 1e-15;
    constexpr int max_sweeps = 80;

    std::vector<double> sq(std::size_t(n), 0.0);
    const auto refresh_norms = [&] {
        for (Eigen::Index j = 0; j < n; ++j)
            sq[std::size_t(j)] = a.col(j).squaredNorm();
    };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        refresh_norms();
        bool rotated = false;
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double alpha = sq[std::size_t(i)];
                const double beta = sq[std::size_t(j)];
                if (alpha == 0.0 || beta == 0.0)
                    continue;
                const cplx gamma = a.col(i).dot(a.col(j)); // a_i^H a_j
                const double g = std::abs(gamma);
                if (g <= tol * std::sqrt(alpha) * std::sqrt(beta))
                    continue;
                rotated = true;
                const cplx phase = gamma / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                // b = a_j conj(phase) makes a_i^H b real; then a plane rotation.
                const cplx cphase = std::conj(phase);
                cplx* ci = a.col(i).data();
                cplx* cj = a.col(j).data();
                for (Eigen::Index r = 0; r < a.rows(); ++r) {
                    const cplx ai = ci[r];
                    const cplx bj = cj[r] * cphase;
                    ci[r] = c * ai - s * bj;
                    cj[r] = s * ai + c * bj;
                }
                sq[std::size_t(i)] = alpha - t * g;
                sq[std::size_t(j)] = beta + t * g;
            }
        }
        if (!rotated)
            break;
    }
    refresh_norms();
    std::vector<double> mu(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j)
        mu[std::size_t(j)] = std::sqrt(sq[std::size_t(j)]);
    return mu;
}

} // namespace detail

/// Singular values of a square matrix. Diagonal input is sorted directly.
inline SingularSpectrum singular_values(const ComplexMatrix& a)
{
    if (a.rows() != a.cols())
        throw ValidationError("singular_values: matrix is " + std::to_string(a.rows()) + "x"
                              + std::to_string(a.cols()) + ", expected square");
    if (!a.allFinite())
        throw ValidationError("singular_values: matrix has non-finite entries");
    if (detail::is_diagonal(a)) {
        std::vector<double> d(std::size_t(a.rows()));
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            d[std::size_t(i)] = std::abs(a(i, i));
        return make_spectrum(std::move(d));
    }
    return make_spectrum(detail::jacobi_singular_values(a));
}

inline SingularSpectrum singular_values(const OperatorMatrix& a) { return singular_values(a.entries); }

/// Spectrum of the multiplier T_g on `box`: sorted |g(n)|, no matrix assembled.
inline SingularSpectrum multiplier_spectrum(const SymbolFunction& g, const LatticeBox& box)
{
    const auto diag = multiplier_diagonal(g, box);
    std::vector<double> v(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        v[i] = std::abs(diag[i]);
    return make_spectrum(std::move(v));
}

inline constexpr double infinity_exponent = std::numeric_limits<double>::infinity();

/// ||mu||_{l^p}; p = inf gives mu(0). For p < 1 this is a quasinorm.
/// Accumulated as mu(0) * (sum (mu(k)/mu(0))^p)^{1/p} with powers taken in log space.
inline double schatten_norm(const SingularSpectrum& mu, double p)
{
    if (!(p > 0.0))
        throw ValidationError("Schatten exponent must be > 0, got " + std::to_string(p));
    if (mu.values.empty())
        return 0.0;
    const double top = mu.values.front();
    if (top == 0.0)
        return 0.0;
    if (std::isinf(p))
        return top;
    double s = 0.0;
    for (double v : mu.values) {
        if (v == 0.0)
            continue;
        s += std::exp(p * std::log(v / top));
    }
    return top * std::exp(std::log(s) / p);
}

/// sup_k (k+1)^{1/p} mu(k)
inline double weak_norm(const SingularSpectrum& mu, double p)
{
    if (!(p > 0.0))
        throw ValidationError("weak Schatten exponent must be > 0, got " + std::to_string(p));
    double best = 0.0;
    for (std::size_t k = 0; k < mu.values.size(); ++k)
        best = std::max(best, std::pow(double(k + 1), 1.0 / p) * mu.values[k]);
    return best;
}

struct DecayFit {
    double slope = 0.0;
    double residual = 0.0; // RMS of the log-log fit
    std::size_t k_min = 0;
    std::size_t k_max = 0;
};

/// Least-squares slope of log mu(k) against log(k+1) for k in [k_min, k_max].
inline DecayFit decay_exponent(const SingularSpectrum& mu, std::size_t k_min, std::size_t k_max)
{
    if (!(k_min >= 1 && k_min < k_max && k_max < mu.size()))
        throw ValidationError("decay window [" + std::to_string(k_min) + ", " + std::to_string(k_max)
                              + "] invalid for spectrum of length " + std::to_string(mu.size()));
    const std::size_t n = k_max - k_min + 1;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = k_min + i;
        if (!(mu[k] > 0.0))
            throw ValidationError("zero singular value at k=" + std::to_string(k)
                                  + " inside decay window; shrink the window");
        xs[i] = std::log(double(k + 1));
        ys[i] = std::log(mu[k]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    DecayFit fit;
    fit.slope = sxy / sxx;
    fit.k_min = k_min;
    fit.k_max = k_max;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - (my + fit.slope * (xs[i] - mx));
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / double(n));
    return fit;
}

/// Default window [ceil(0.05 len), floor(0.5 len)].
inline DecayFit decay_exponent(const SingularSpectrum& mu)
{
    const std::size_t len = mu.size();
    const auto k_min = std::max<std::size_t>(1, std::size_t(std::ceil(0.05 * double(len))));
    const auto k_max = std::size_t(std::floor(0.5 * double(len)));
    return decay_exponent(mu, k_min, k_max);
}

/// r* = 2d / (d + 2(alpha1 + alpha2)); T_k is in S_r for every r > r*.
inline double critical_exponent(int d, double alpha1, double alpha2)
{
    if (d < 2)
        throw ValidationError("critical_exponent requires d >= 2, got " + std::to_string(d));
    if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0))
        throw ValidationError("critical_exponent requires alpha1, alpha2 >= 0");
    return 2.0 * d / (d + 2.0 * (alpha1 + alpha2));
}

/// t with 1/t = 1/p + 1/q (Hoelder exponent of a product).
inline double holder_exponent(double p, double q) { return 1.0 / (1.0 / p + 1.0 / q); }

} // namespace nctorus
