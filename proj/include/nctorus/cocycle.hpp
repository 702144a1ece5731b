#pragma once
//
// Deformation matrix theta, its strictly lower triangular reduction, and the
// bicharacter sigma(m, n) = exp(2 pi i m^T theta~ n).
//

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"

namespace nctorus {

using cplx = std::complex<double>;

inline constexpr double skew_tolerance = 1e-12;

/// Real skew-symmetric d x d matrix, d >= 2. Validated on construction.
class ThetaMatrix {
public:
    /// rows[j][k] = theta_{jk} (0-based).
    explicit ThetaMatrix(std::vector<std::vector<double>> rows) : rows_(std::move(rows))
    {
        const std::size_t d = rows_.size();
        if (d < 2)
            throw ValidationError("theta must be at least 2x2, got d=" + std::to_string(d));
        for (std::size_t j = 0; j < d; ++j)
            if (rows_[j].size() != d)
                throw ValidationError("theta row " + std::to_string(j) + " has length "
                                      + std::to_string(rows_[j].size()) + ", expected "
                                      + std::to_string(d));
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = 0; k < d; ++k) {
                const double v = rows_[j][k];
                if (!std::isfinite(v))
                    throw ValidationError(entry_name(j, k) + " is not finite");
                if (j == k && std::abs(v) > skew_tolerance) {
                    std::ostringstream os;
                    os.precision(17);
                    os << entry_name(j, k) << " = " << v << " must be 0 on the diagonal";
                    throw ValidationError(os.str());
                }
                if (j > k && std::abs(v + rows_[k][j]) > skew_tolerance) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "theta not skew-symmetric: " << entry_name(j, k) << " = " << v << " but "
                       << entry_name(k, j) << " = " << rows_[k][j];
                    throw ValidationError(os.str());
                }
            }
        }
    }

    /// Zero matrix (the commutative torus).
    static ThetaMatrix zero(std::size_t d)
    {
        return ThetaMatrix(std::vector<std::vector<double>>(d, std::vector<double>(d, 0.0)));
    }

    /// Skew matrix from its strictly lower part, given row by row:
    /// theta_{21}, theta_{31}, theta_{32}, ...
    static ThetaMatrix from_lower(std::size_t d, const std::vector<double>& lower)
    {
        if (lower.size() != d * (d - 1) / 2)
            throw ValidationError("expected " + std::to_string(d * (d - 1) / 2)
                                  + " lower-triangular entries");
        std::vector<std::vector<double>> rows(d, std::vector<double>(d, 0.0));
        std::size_t i = 0;
        for (std::size_t j = 1; j < d; ++j)
            for (std::size_t k = 0; k < j; ++k) {
                rows[j][k] = lower[i];
                rows[k][j] = -lower[i];
                ++i;
            }
        return ThetaMatrix(std::move(rows));
    }

    std::size_t dim() const { return rows_.size(); }
    double operator()(std::size_t j, std::size_t k) const { return rows_[j][k]; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

    ThetaMatrix negated() const
    {
        auto r = rows_;
        for (auto& row : r)
            for (auto& v : row)
                v = -v;
        return ThetaMatrix(std::move(r));
    }

private:
    static std::string entry_name(std::size_t j, std::size_t k)
    {
        return "theta[" + std::to_string(j) + "][" + std::to_string(k) + "]";
    }

    std::vector<std::vector<double>> rows_;
};

/// Strictly lower triangular part of theta; drives the cocycle.
class ReducedTheta {
public:
    explicit ReducedTheta(const ThetaMatrix& theta) : dim_(theta.dim()), lower_(dim_ * dim_, 0.0)
    {
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < j; ++k)
                lower_[j * dim_ + k] = theta(j, k);
    }

    std::size_t dim() const { return dim_; }
    double operator()(std::size_t j, std::size_t k) const { return lower_[j * dim_ + k]; }

    /// m^T theta~ n
    double bilinear(const MultiIndex& m, const MultiIndex& n) const
    {
        if (m.dim() != dim_ || n.dim() != dim_)
            throw ValidationError("sigma: index dimension " + std::to_string(m.dim()) + "/"
                                  + std::to_string(n.dim()) + " does not match d="
                                  + std::to_string(dim_));
        double s = 0.0;
        for (std::size_t j = 1; j < dim_; ++j) {
            if (m[j] == 0)
                continue;
            double row = 0.0;
            for (std::size_t k = 0; k < j; ++k)
                row += lower_[j * dim_ + k] * n[k];
            s += m[j] * row;
        }
        return s;
    }

    friend bool operator==(const ReducedTheta&, const ReducedTheta&) = default;

private:
    std::size_t dim_;
    std::vector<double> lower_;
};

inline ReducedTheta reduce(const ThetaMatrix& theta) { return ReducedTheta(theta); }

/// exp(2 pi i t) with t reduced mod 1 first.
inline cplx unit_phase(double turns)
{
    const double frac = turns - std::nearbyint(turns);
    return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

inline cplx sigma(const ReducedTheta& theta, const MultiIndex& m, const MultiIndex& n)
{
    return unit_phase(theta.bilinear(m, n));
}

} // namespace nctorus
