#pragma once
//
// Reference (definitional) constructions used to cross-check the production
// formulas: elements of T_theta (x) T_theta^op as sparse sums of monomial
// tensors, their product, and the partial trace id (x) tau.
//
// These are slow and only meant for small boxes.
//

#include <map>
#include <utility>
#include <vector>

#include "kernels.hpp"
#include "torus_element.hpp"

namespace nctorus::reference {

/// sum c_{m,n} U^m (x) U^n with the second leg in the opposite algebra.
class TensorElement {
public:
    using Key = std::pair<std::vector<int>, std::vector<int>>;

    explicit TensorElement(ReducedTheta theta) : theta_(std::move(theta)) {}

    static TensorElement from_kernel(const NCKernel& k)
    {
        TensorElement t(k.theta());
        for (std::size_t i = 0; i < k.box1().cardinality(); ++i)
            for (std::size_t j = 0; j < k.box2().cardinality(); ++j) {
                const cplx c = k.coeffs()(Eigen::Index(i), Eigen::Index(j));
                if (c != cplx{})
                    t.add(k.box1().point(i), k.box2().point(j), c);
            }
        return t;
    }

    /// a (x) b
    static TensorElement elementary(const TorusElement& a, const TorusElement& b)
    {
        TensorElement t(a.theta());
        for (std::size_t i = 0; i < a.box().cardinality(); ++i)
            for (std::size_t j = 0; j < b.box().cardinality(); ++j) {
                const cplx c = a.coeffs()[i] * b.coeffs()[j];
                if (c != cplx{})
                    t.add(a.box().point(i), b.box().point(j), c);
            }
        return t;
    }

    void add(const MultiIndex& m, const MultiIndex& n, cplx c) { terms_[{m.entries(), n.entries()}] += c; }

    const std::map<Key, cplx>& terms() const { return terms_; }

    /// (a (x) b)(a' (x) b') = (a a') (x) (b' b): first leg in T_theta, second
    /// leg in the opposite algebra.
    friend TensorElement operator*(const TensorElement& lhs, const TensorElement& rhs)
    {
        TensorElement out(lhs.theta_);
        for (const auto& [k1, c1] : lhs.terms_) {
            const MultiIndex a(k1.first), b(k1.second);
            for (const auto& [k2, c2] : rhs.terms_) {
                const MultiIndex a2(k2.first), b2(k2.second);
                const cplx left = sigma(lhs.theta_, a, a2);   // U^a U^a2
                const cplx right = sigma(lhs.theta_, b2, b);  // U^b * U^b2 = U^b2 U^b
                out.add(a + a2, b + b2, c1 * c2 * left * right);
            }
        }
        return out;
    }

    /// (id (x) tau): keeps the terms whose second leg is U^0.
    TorusElement partial_trace(const LatticeBox& box) const
    {
        TorusElement out(theta_, box);
        for (const auto& [key, c] : terms_) {
            const MultiIndex n(key.second);
            if (!n.is_zero())
                continue;
            const MultiIndex m(key.first);
            if (box.contains(m))
                out.at(m) += c;
        }
        return out;
    }

private:
    ReducedTheta theta_;
    std::map<Key, cplx> terms_;
};

/// T_k x computed literally as (id (x) tau)(k (1 (x) x)).
inline TorusElement partial_trace_action(const NCKernel& k, const TorusElement& x)
{
    const TensorElement kt = TensorElement::from_kernel(k);
    const TensorElement one_x = TensorElement::elementary(unit(k.theta(), LatticeBox(k.dim(), 0)), x);
    return (kt * one_x).partial_trace(k.box1());
}

} // namespace nctorus::reference
