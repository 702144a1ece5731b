#pragma once
//
// Random test data drawn from SplitMix64 streams.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "cocycle.hpp"
#include "kernels.hpp"
#include "operator_matrix.hpp"
#include "random.hpp"
#include "torus_element.hpp"

namespace nctorus {

inline MultiIndex random_index(SplitMix64& rng, std::size_t dim, int radius)
{
    MultiIndex m(dim);
    for (std::size_t j = 0; j < dim; ++j)
        m[j] = int(rng() % std::uint64_t(2 * radius + 1)) - radius;
    return m;
}

inline cplx random_complex(SplitMix64& rng) { return {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}; }

/// Skew matrix with lower entries uniform on [-1, 1).
inline ThetaMatrix random_theta(std::size_t dim, SplitMix64& rng)
{
    std::vector<double> lower(dim * (dim - 1) / 2);
    for (double& v : lower)
        v = rng.uniform(-1.0, 1.0);
    return ThetaMatrix::from_lower(dim, lower);
}

/// Lower entries frac((i+1)/sqrt(2)): 0.7071..., 0.4142..., 0.1213...
inline ThetaMatrix default_theta(std::size_t dim)
{
    std::vector<double> lower(dim * (dim - 1) / 2);
    for (std::size_t i = 0; i < lower.size(); ++i) {
        const double v = double(i + 1) / std::numbers::sqrt2;
        lower[i] = v - std::floor(v);
    }
    return ThetaMatrix::from_lower(dim, lower);
}

inline TorusElement random_element(const ReducedTheta& theta, const LatticeBox& box, SplitMix64& rng)
{
    TorusElement x(theta, box);
    for (cplx& c : x.coeffs())
        c = random_complex(rng);
    return x;
}

inline NCKernel random_dense_kernel(const ReducedTheta& theta, const LatticeBox& box, SplitMix64& rng)
{
    NCKernel k(theta, box);
    for (Eigen::Index j = 0; j < k.coeffs().cols(); ++j)
        for (Eigen::Index i = 0; i < k.coeffs().rows(); ++i)
            k.coeffs()(i, j) = random_complex(rng);
    return k;
}

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, SplitMix64& rng)
{
    ComplexMatrix a(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            a(i, j) = random_complex(rng);
    return a;
}

/// ||a - b||_2 over the union of supports.
inline double element_distance(const TorusElement& a, const TorusElement& b)
{
    const LatticeBox box(a.dim(), std::max(a.box().radius(), b.box().radius()));
    double s = 0.0;
    for (std::size_t i = 0; i < box.cardinality(); ++i) {
        const MultiIndex m = box.point(i);
        s += std::norm(a.coefficient(m) - b.coefficient(m));
    }
    return std::sqrt(s);
}

} // namespace nctorus
