#pragma once
//
// Fourier multipliers T_g x = sum g(n) x^(n) U^n, Bessel and Riesz potentials,
// and potential Sobolev norms.
//

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "operator_matrix.hpp"
#include "torus_element.hpp"

namespace nctorus {

inline constexpr double flush_threshold = 1e-300;

/// A symbol on Z^d (a function on R^d restricted to the lattice by evaluation).
struct SymbolFunction {
    std::function<cplx(const MultiIndex&)> eval;
    std::string name;

    cplx operator()(const MultiIndex& n) const { return eval(n); }
};

namespace detail {

// base^(power) computed as exp(power * log(base)), base > 0; tiny results flushed to 0.
inline double pow_via_log(double log_base, double power)
{
    const double v = std::exp(power * log_base);
    return v < flush_threshold ? 0.0 : v;
}

} // namespace detail

/// (1 + |n|^2)^{alpha/2} as a real number.
inline double bessel_weight(const MultiIndex& n, double alpha)
{
    return detail::pow_via_log(std::log1p(double(norm_sq(n))), 0.5 * alpha);
}

inline SymbolFunction bessel_symbol(double alpha)
{
    return {[alpha](const MultiIndex& n) { return cplx(bessel_weight(n, alpha)); },
            "bessel(" + std::to_string(alpha) + ")"};
}

/// |n|^alpha, and 0 at n = 0: I^alpha acts on the mean-zero subspace, so the
/// mean of the argument is annihilated.
inline SymbolFunction riesz_symbol(double alpha)
{
    return {[alpha](const MultiIndex& n) {
                const auto s = norm_sq(n);
                if (s == 0)
                    return cplx{};
                return cplx(detail::pow_via_log(std::log(double(s)), 0.5 * alpha));
            },
            "riesz(" + std::to_string(alpha) + ")"};
}

inline SymbolFunction constant_symbol(cplx value)
{
    return {[value](const MultiIndex&) { return value; }, "constant"};
}

/// Pointwise product g * h.
inline SymbolFunction product_symbol(SymbolFunction g, SymbolFunction h)
{
    std::string name = g.name + "*" + h.name;
    return {[g = std::move(g), h = std::move(h)](const MultiIndex& n) { return g(n) * h(n); },
            std::move(name)};
}

namespace detail {

inline cplx checked_eval(const SymbolFunction& g, const MultiIndex& n)
{
    cplx v;
    try {
        v = g(n);
    } catch (const std::exception& e) {
        throw ValidationError("symbol " + g.name + " failed at n=" + n.str() + ": " + e.what());
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw ValidationError("symbol " + g.name + " is not finite at n=" + n.str());
    return v;
}

} // namespace detail

inline TorusElement apply_multiplier(const SymbolFunction& g, const TorusElement& x)
{
    TorusElement out(x);
    for (std::size_t i = 0; i < out.coeffs().size(); ++i)
        out.coeffs()[i] *= detail::checked_eval(g, x.box().point(i));
    return out;
}

/// Diagonal of T_g over `box`, in enumerate order.
inline std::vector<cplx> multiplier_diagonal(const SymbolFunction& g, const LatticeBox& box)
{
    std::vector<cplx> diag(box.cardinality());
    for (std::size_t i = 0; i < diag.size(); ++i)
        diag[i] = detail::checked_eval(g, box.point(i));
    return diag;
}

inline OperatorMatrix multiplier_matrix(const SymbolFunction& g, const LatticeBox& box)
{
    const auto diag = multiplier_diagonal(g, box);
    const auto n = Eigen::Index(diag.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        m(i, i) = diag[std::size_t(i)];
    return {box, std::move(m)};
}

/// ||J^alpha x||_2 = (sum (1+|n|^2)^alpha |x^(n)|^2)^{1/2}
inline double sobolev_norm(const TorusElement& x, double alpha)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
        const double a = std::abs(x.coeffs()[i]);
        if (a == 0.0)
            continue;
        const double w = bessel_weight(x.box().point(i), alpha);
        s += (w * a) * (w * a);
    }
    return std::sqrt(s);
}

} // namespace nctorus
