#pragma once
//
// Finitely supported elements x = sum_n x^(n) U^n of the quantum torus, stored
// densely over a lattice box, with the twisted product, involution and trace.
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "cocycle.hpp"
#include "errors.hpp"
#include "lattice.hpp"

namespace nctorus {

class TorusElement {
public:
    /// The zero element over `box`.
    TorusElement(ReducedTheta theta, LatticeBox box)
        : theta_(std::move(theta)), box_(box), coeffs_(box.cardinality(), cplx{})
    {
        check_dims();
    }

    TorusElement(ReducedTheta theta, LatticeBox box, std::vector<cplx> coeffs)
        : theta_(std::move(theta)), box_(box), coeffs_(std::move(coeffs))
    {
        check_dims();
        if (coeffs_.size() != box_.cardinality())
            throw ValidationError("coefficient count " + std::to_string(coeffs_.size())
                                  + " does not match box cardinality "
                                  + std::to_string(box_.cardinality()));
    }

    const ReducedTheta& theta() const { return theta_; }
    const LatticeBox& box() const { return box_; }
    std::size_t dim() const { return box_.dim(); }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    std::vector<cplx>& coeffs() { return coeffs_; }

    /// x^(m); zero outside the support box.
    cplx coefficient(const MultiIndex& m) const
    {
        return box_.contains(m) ? coeffs_[box_.linear_index(m)] : cplx{};
    }

    cplx& at(const MultiIndex& m) { return coeffs_[box_.linear_index(m)]; }

    /// Same element re-stored over another box; coefficients outside it are dropped.
    TorusElement on_box(const LatticeBox& box) const
    {
        TorusElement r(theta_, box);
        for (std::size_t i = 0; i < box.cardinality(); ++i)
            r.coeffs_[i] = coefficient(box.point(i));
        return r;
    }

    TorusElement& operator+=(const TorusElement& o)
    {
        require_same_algebra(*this, o, "addition");
        if (!(o.box_ == box_))
            *this = on_box(LatticeBox(dim(), std::max(box_.radius(), o.box_.radius())));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
            at(o.box_.point(i)) += o.coeffs_[i];
        return *this;
    }

    friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }

    friend TorusElement operator*(cplx s, TorusElement x)
    {
        for (auto& c : x.coeffs_)
            c *= s;
        return x;
    }

    static void require_same_algebra(const TorusElement& a, const TorusElement& b, const char* what)
    {
        if (!(a.theta_ == b.theta_))
            throw ValidationError(std::string(what) + ": operands belong to different deformations");
    }

private:
    void check_dims() const
    {
        if (theta_.dim() != box_.dim())
            throw ValidationError("theta dimension " + std::to_string(theta_.dim())
                                  + " does not match box dimension " + std::to_string(box_.dim()));
    }

    ReducedTheta theta_;
    LatticeBox box_;
    std::vector<cplx> coeffs_;
};

/// U^m stored over `box`.
inline TorusElement monomial(const ReducedTheta& theta, const MultiIndex& m, const LatticeBox& box)
{
    TorusElement x(theta, box);
    x.at(m) = 1.0;
    return x;
}

inline TorusElement unit(const ReducedTheta& theta, const LatticeBox& box)
{
    return monomial(theta, MultiIndex(box.dim()), box);
}

/// (f *_sigma g)(m) = sum_n f(m-n) g(n) sigma(m-n, n), on the box of radius N_f + N_g.
inline TorusElement twisted_convolve(const TorusElement& f, const TorusElement& g)
{
    TorusElement::require_same_algebra(f, g, "twisted_convolve");
    const LatticeBox out_box(f.dim(), f.box().radius() + g.box().radius());
    TorusElement out(f.theta(), out_box);
    const auto fpts = f.box().enumerate();
    const auto gpts = g.box().enumerate();
    for (std::size_t a = 0; a < fpts.size(); ++a) {
        const cplx fa = f.coeffs()[a];
        if (fa == cplx{})
            continue;
        for (std::size_t b = 0; b < gpts.size(); ++b) {
            const cplx gb = g.coeffs()[b];
            if (gb == cplx{})
                continue;
            out.at(fpts[a] + gpts[b]) += fa * gb * sigma(f.theta(), fpts[a], gpts[b]);
        }
    }
    return out;
}

/// f#(m) = conj(sigma(m, -m)) conj(f(-m)); the adjoint x*.
inline TorusElement involution(const TorusElement& f)
{
    TorusElement out(f.theta(), f.box());
    for (std::size_t i = 0; i < f.box().cardinality(); ++i) {
        const MultiIndex m = f.box().point(i);
        out.coeffs()[i] = std::conj(sigma(f.theta(), m, -m)) * std::conj(f.coefficient(-m));
    }
    return out;
}

/// tau(x) = x^(0)
inline cplx trace(const TorusElement& x) { return x.coefficient(MultiIndex(x.dim())); }

/// <x, y> = tau(y# x) = sum_n x^(n) conj(y^(n))
inline cplx inner_product(const TorusElement& x, const TorusElement& y)
{
    TorusElement::require_same_algebra(x, y, "inner_product");
    cplx s{};
    for (std::size_t i = 0; i < x.box().cardinality(); ++i) {
        const cplx xi = x.coeffs()[i];
        if (xi != cplx{})
            s += xi * std::conj(y.coefficient(x.box().point(i)));
    }
    return s;
}

inline double l2_norm(const TorusElement& x)
{
    double s = 0.0;
    for (const cplx& c : x.coeffs())
        s += std::norm(c);
    return std::sqrt(s);
}

/// Partial derivation d_j, j in 1..d: U^n -> 2 pi i n_j U^n.
inline TorusElement partial_derivative(std::size_t j, const TorusElement& x)
{
    if (j < 1 || j > x.dim())
        throw ValidationError("derivation index " + std::to_string(j) + " outside 1.."
                              + std::to_string(x.dim()));
    TorusElement out(x);
    for (std::size_t i = 0; i < out.coeffs().size(); ++i)
        out.coeffs()[i] *= cplx(0.0, 2.0 * std::numbers::pi * x.box().point(i)[j - 1]);
    return out;
}

/// D_j = -i d_j (self-adjoint).
inline TorusElement self_adjoint_derivative(std::size_t j, const TorusElement& x)
{
    return cplx(0.0, -1.0) * partial_derivative(j, x);
}

/// Laplacian: U^n -> -4 pi^2 |n|^2 U^n.
inline TorusElement laplacian(const TorusElement& x)
{
    TorusElement out(x);
    const double c = -4.0 * std::numbers::pi * std::numbers::pi;
    for (std::size_t i = 0; i < out.coeffs().size(); ++i)
        out.coeffs()[i] *= c * double(norm_sq(x.box().point(i)));
    return out;
}

} // namespace nctorus
