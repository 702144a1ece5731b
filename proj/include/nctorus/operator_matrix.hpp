#pragma once
//
// Dense matrices indexed by a lattice box (rows and columns in enumerate order).
//

#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"
#include "lattice.hpp"
#include "torus_element.hpp"

namespace nctorus {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct OperatorMatrix {
    LatticeBox box;
    ComplexMatrix entries;

    OperatorMatrix(LatticeBox b, ComplexMatrix m) : box(b), entries(std::move(m))
    {
        const auto n = Eigen::Index(box.cardinality());
        if (entries.rows() != n || entries.cols() != n)
            throw ValidationError("operator matrix must be " + std::to_string(n) + "x"
                                  + std::to_string(n) + " for its box");
    }

    Eigen::Index side() const { return entries.rows(); }
};

/// Coefficients of x in the enumerate order of `box` (zero-padded / truncated).
inline ComplexVector coefficient_vector(const TorusElement& x, const LatticeBox& box)
{
    ComplexVector v(Eigen::Index(box.cardinality()));
    for (std::size_t i = 0; i < box.cardinality(); ++i)
        v(Eigen::Index(i)) = x.coefficient(box.point(i));
    return v;
}

inline TorusElement element_from_vector(const ReducedTheta& theta, const LatticeBox& box,
                                        const ComplexVector& v)
{
    return TorusElement(theta, box, std::vector<cplx>(v.data(), v.data() + v.size()));
}

/// Left multiplication M_x on `box`: entry (m, n) = sigma(m-n, n) x^(m-n).
inline OperatorMatrix mult_matrix(const TorusElement& x, const LatticeBox& box)
{
    if (box.dim() != x.dim())
        throw ValidationError("mult_matrix: box dimension does not match element");
    const auto pts = box.enumerate();
    const auto n = Eigen::Index(pts.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
            const MultiIndex diff = pts[r] - pts[c];
            if (x.box().contains(diff))
                m(r, c) = sigma(x.theta(), diff, pts[c]) * x.coefficient(diff);
        }
    return {box, std::move(m)};
}

} // namespace nctorus
