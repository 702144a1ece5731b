#pragma once
//
// Noncommutative integral kernels k = sum c_{m,n} U^m (x) U^n in
// L^2(T_theta (x) T_theta^op) and their integral operators
//   T_k x = (id (x) tau)(k (1 (x) x)).
//
// Expanding the partial trace with the opposite product on the second leg,
// tau(U^n * x) = tau(x U^n) = sigma(-n, n) x^(-n), so
//   (T_k x)^(m) = sum_n c_{m,n} sigma(-n, n) x^(-n).
//

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "errors.hpp"
#include "lattice.hpp"
#include "multipliers.hpp"
#include "operator_matrix.hpp"
#include "random.hpp"
#include "torus_element.hpp"

namespace nctorus {

class NCKernel {
public:
    NCKernel(ReducedTheta theta, LatticeBox box1, LatticeBox box2)
        : NCKernel(std::move(theta), box1, box2,
                   ComplexMatrix::Zero(Eigen::Index(box1.cardinality()),
                                       Eigen::Index(box2.cardinality())))
    {}

    NCKernel(ReducedTheta theta, LatticeBox box1, LatticeBox box2, ComplexMatrix coeffs)
        : theta_(std::move(theta)), box1_(box1), box2_(box2), coeffs_(std::move(coeffs))
    {
        if (box1_.dim() != theta_.dim() || box2_.dim() != theta_.dim())
            throw ValidationError("kernel boxes must match theta dimension");
        if (coeffs_.rows() != Eigen::Index(box1_.cardinality())
            || coeffs_.cols() != Eigen::Index(box2_.cardinality()))
            throw ValidationError("kernel coefficient matrix has wrong shape");
    }

    /// Square kernel over box x box.
    NCKernel(ReducedTheta theta, LatticeBox box) : NCKernel(std::move(theta), box, box) {}

    const ReducedTheta& theta() const { return theta_; }
    const LatticeBox& box1() const { return box1_; }
    const LatticeBox& box2() const { return box2_; }
    std::size_t dim() const { return box1_.dim(); }
    const ComplexMatrix& coeffs() const { return coeffs_; }
    ComplexMatrix& coeffs() { return coeffs_; }

    /// c_{m,n}; zero outside box1 x box2.
    cplx coefficient(const MultiIndex& m, const MultiIndex& n) const
    {
        if (!box1_.contains(m) || !box2_.contains(n))
            return {};
        return coeffs_(Eigen::Index(box1_.linear_index(m)), Eigen::Index(box2_.linear_index(n)));
    }

    cplx& at(const MultiIndex& m, const MultiIndex& n)
    {
        return coeffs_(Eigen::Index(box1_.linear_index(m)), Eigen::Index(box2_.linear_index(n)));
    }

    bool is_square() const { return box1_ == box2_; }

    NCKernel& operator+=(const NCKernel& o)
    {
        require_compatible(o, "kernel addition");
        coeffs_ += o.coeffs_;
        return *this;
    }

    friend NCKernel operator+(NCKernel a, const NCKernel& b) { return a += b; }

    friend NCKernel operator*(cplx s, NCKernel k)
    {
        k.coeffs_ *= s;
        return k;
    }

    void require_compatible(const NCKernel& o, const char* what) const
    {
        if (!(theta_ == o.theta_) || !(box1_ == o.box1_) || !(box2_ == o.box2_))
            throw ValidationError(std::string(what) + ": kernels differ in theta or boxes");
    }

private:
    ReducedTheta theta_;
    LatticeBox box1_;
    LatticeBox box2_;
    ComplexMatrix coeffs_;
};

/// Product in the opposite algebra: a * b = b a.
inline TorusElement op_multiply(const TorusElement& a, const TorusElement& b)
{
    TorusElement::require_same_algebra(a, b, "op_multiply");
    return twisted_convolve(b, a);
}

/// Elementary tensor a (x) b.
inline NCKernel tensor_kernel(const TorusElement& a, const TorusElement& b)
{
    TorusElement::require_same_algebra(a, b, "tensor_kernel");
    ComplexVector va = coefficient_vector(a, a.box());
    ComplexVector vb = coefficient_vector(b, b.box());
    return NCKernel(a.theta(), a.box(), b.box(), va * vb.transpose());
}

/// ||k||_{L^2}^2 = sum |c_{m,n}|^2
inline double l2_norm(const NCKernel& k) { return k.coeffs().norm(); }

inline TorusElement apply_kernel(const NCKernel& k, const TorusElement& x)
{
    if (!(k.theta() == x.theta()))
        throw ValidationError("apply_kernel: kernel and argument belong to different deformations");
    // paired[n] = sigma(-n, n) x^(-n) for n in box2
    ComplexVector paired(Eigen::Index(k.box2().cardinality()));
    for (std::size_t j = 0; j < k.box2().cardinality(); ++j) {
        const MultiIndex n = k.box2().point(j);
        const MultiIndex neg = -n;
        paired(Eigen::Index(j)) = sigma(k.theta(), neg, n) * x.coefficient(neg);
    }
    return element_from_vector(k.theta(), k.box1(), k.coeffs() * paired);
}

/// Matrix of T_k on `box`: entry (m, p) = c_{m,-p} sigma(p, -p). Column p is
/// the coefficient vector of T_k U^p.
inline OperatorMatrix kernel_matrix(const NCKernel& k, const LatticeBox& box)
{
    if (box.dim() != k.dim())
        throw ValidationError("kernel_matrix: box dimension does not match kernel");
    const auto pts = box.enumerate();
    const auto n = Eigen::Index(pts.size());
    ComplexMatrix m(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const MultiIndex& p = pts[std::size_t(c)];
        const MultiIndex neg = -p;
        const cplx phase = sigma(k.theta(), p, neg);
        const bool col_in = k.box2().contains(neg);
        const Eigen::Index src_col = col_in ? Eigen::Index(k.box2().linear_index(neg)) : 0;
        for (Eigen::Index r = 0; r < n; ++r) {
            const MultiIndex& row = pts[std::size_t(r)];
            if (col_in && k.box1().contains(row))
                m(r, c) = k.coeffs()(Eigen::Index(k.box1().linear_index(row)), src_col) * phase;
            else
                m(r, c) = 0.0;
        }
    }
    return {box, std::move(m)};
}

/// Matrix of T_k on its own (square) box.
inline OperatorMatrix kernel_matrix(const NCKernel& k)
{
    if (!k.is_square())
        throw ValidationError("kernel_matrix: kernel boxes differ; pass an explicit box");
    return kernel_matrix(k, k.box1());
}

/// Kernel of J^{-alpha2}: sum_n (1+|n|^2)^{-alpha2/2} U^n (x) (U^n)*, with
/// (U^n)* = conj(sigma(n, -n)) U^{-n}.
inline NCKernel bessel_kernel(double alpha2, const LatticeBox& box, const ReducedTheta& theta)
{
    NCKernel k(theta, box);
    for (std::size_t i = 0; i < box.cardinality(); ++i) {
        const MultiIndex n = box.point(i);
        k.at(n, -n) = bessel_weight(n, -alpha2) * std::conj(sigma(theta, n, -n));
    }
    return k;
}

/// (J^{alpha1} (x) J^{alpha2}) k
inline NCKernel sobolev_lift(const NCKernel& k, double alpha1, double alpha2)
{
    NCKernel out(k);
    for (std::size_t i = 0; i < k.box1().cardinality(); ++i) {
        const double wi = bessel_weight(k.box1().point(i), alpha1);
        for (std::size_t j = 0; j < k.box2().cardinality(); ++j)
            out.coeffs()(Eigen::Index(i), Eigen::Index(j)) *=
                wi * bessel_weight(k.box2().point(j), alpha2);
    }
    return out;
}

/// ||k||_{H^{alpha1, alpha2}}; exponents must be nonnegative.
inline double mixed_sobolev_norm(const NCKernel& k, double alpha1, double alpha2)
{
    if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0))
        throw ValidationError("mixed Sobolev exponents must be >= 0, got (" + std::to_string(alpha1)
                              + ", " + std::to_string(alpha2) + ")");
    return l2_norm(sobolev_lift(k, alpha1, alpha2));
}

/// flip(k)*: the kernel of T_k^*. Flips the legs, then applies the involution
/// on each tensor factor.
inline NCKernel flip_adjoint(const NCKernel& k)
{
    if (!k.is_square())
        throw ValidationError("flip_adjoint requires box1 == box2");
    const LatticeBox& box = k.box1();
    NCKernel out(k.theta(), box);
    for (std::size_t i = 0; i < box.cardinality(); ++i) {
        const MultiIndex m = box.point(i);
        const cplx pm = std::conj(sigma(k.theta(), m, -m));
        for (std::size_t j = 0; j < box.cardinality(); ++j) {
            const MultiIndex n = box.point(j);
            out.coeffs()(Eigen::Index(i), Eigen::Index(j)) =
                std::conj(k.coefficient(-n, -m)) * pm * std::conj(sigma(k.theta(), n, -n));
        }
    }
    return out;
}

struct SchwartzReport {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double s0 = 0.0;
    double lifted_norm = 0.0;        // ||h||_{H^{alpha1+s0, alpha2+s0}}
    ComplexMatrix coefficients;      // b_{m,n}
    Eigen::MatrixXd bound;           // lifted_norm * J(m)^{-(alpha1+s0)} J(n)^{-(alpha2+s0)}
    double worst_ratio = 0.0;        // max |b| / bound
    MultiIndex worst_m, worst_n;
    bool passed = false;
};

inline constexpr double schwartz_slack = 1e-10;

/// Fourier coefficients b_{m,n} = tau (x) tau(h (U^m (x) U^n)*) of h and their
/// Cauchy-Schwarz bound. Requires s0 > d so that sum (1+|m|^2)^{-s0/2} < inf.
inline SchwartzReport schwartz_coefficients(const NCKernel& h, double alpha1, double alpha2,
                                            double s0)
{
    if (!(s0 > double(h.dim())))
        throw ValidationError("s0 must exceed d=" + std::to_string(h.dim()) + ", got "
                              + std::to_string(s0));
    SchwartzReport rep;
    rep.alpha1 = alpha1;
    rep.alpha2 = alpha2;
    rep.s0 = s0;
    rep.lifted_norm = mixed_sobolev_norm(h, alpha1 + s0, alpha2 + s0);
    rep.coefficients = h.coeffs();
    rep.bound.resize(h.coeffs().rows(), h.coeffs().cols());
    rep.worst_m = MultiIndex(h.dim());
    rep.worst_n = MultiIndex(h.dim());
    for (std::size_t i = 0; i < h.box1().cardinality(); ++i) {
        const MultiIndex m = h.box1().point(i);
        const double wm = bessel_weight(m, -(alpha1 + s0));
        for (std::size_t j = 0; j < h.box2().cardinality(); ++j) {
            const MultiIndex n = h.box2().point(j);
            const double b = rep.lifted_norm * wm * bessel_weight(n, -(alpha2 + s0));
            rep.bound(Eigen::Index(i), Eigen::Index(j)) = b;
            const double a = std::abs(rep.coefficients(Eigen::Index(i), Eigen::Index(j)));
            if (a == 0.0)
                continue;
            const double ratio = b > 0.0 ? a / b : std::numeric_limits<double>::infinity();
            if (ratio > rep.worst_ratio) {
                rep.worst_ratio = ratio;
                rep.worst_m = m;
                rep.worst_n = n;
            }
        }
    }
    rep.passed = rep.worst_ratio <= 1.0 + schwartz_slack;
    return rep;
}

/// c_{m,n} = (1+|m|^2)^{-s1/2} (1+|n|^2)^{-s2/2} exp(i phi_{m,n}), phi uniform on
/// [0, 2 pi) keyed by (seed, m, n). A lattice pair draws the same phase in every
/// box, so smaller kernels are sub-blocks of larger ones.
inline NCKernel random_kernel(const ReducedTheta& theta, int radius, double s1, double s2,
                              std::uint64_t seed)
{
    if (!(s1 >= 0.0) || !(s2 >= 0.0))
        throw ValidationError("random_kernel decay exponents must be >= 0");
    if (radius > reference_radius)
        throw ValidationError("random_kernel radius exceeds " + std::to_string(reference_radius));
    const LatticeBox box(theta.dim(), radius);
    NCKernel k(theta, box);
    const auto pts = box.enumerate();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double wm = bessel_weight(pts[i], -s1);
        const std::uint64_t km = lattice_key(pts[i]);
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const double phi = 2.0 * std::numbers::pi * keyed_uniform(seed, km, lattice_key(pts[j]));
            k.coeffs()(Eigen::Index(i), Eigen::Index(j)) =
                std::polar(wm * bessel_weight(pts[j], -s2), phi);
        }
    }
    return k;
}

} // namespace nctorus
