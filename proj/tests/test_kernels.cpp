#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <nctorus/experiment.hpp>
#include <nctorus/kernels.hpp>
#include <nctorus/reference.hpp>
#include <nctorus/sampling.hpp>
#include <nctorus/schatten.hpp>

using namespace nctorus;

namespace {

double rel_distance(const TorusElement& a, const TorusElement& b)
{
    return element_distance(a, b) / std::max(1.0, l2_norm(b));
}

} // namespace

TEST(Kernels, OppositeProductGenerators)
{
    SplitMix64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const ThetaMatrix th = random_theta(3, rng);
        const ReducedTheta t = reduce(th);
        const LatticeBox box(3, 1);
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < 3; ++j) {
                MultiIndex ek(3), ej(3);
                ek[k] = 1;
                ej[j] = 1;
                const TorusElement uk = monomial(t, ek, box), uj = monomial(t, ej, box);
                const TorusElement lhs = op_multiply(uk, uj);
                const TorusElement rhs = unit_phase(-th(k, j)) * op_multiply(uj, uk);
                EXPECT_LE(element_distance(lhs, rhs), 1e-13);
            }
    }
}

TEST(Kernels, OppositeProductUsesTransposedCocycle)
{
    SplitMix64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const ReducedTheta t = reduce(random_theta(2, rng));
        const TorusElement a = random_element(t, LatticeBox(2, int(rng() % 3)), rng);
        const TorusElement b = random_element(t, LatticeBox(2, 2), rng);
        const TorusElement op = op_multiply(a, b);
        for (const auto& m : op.box().enumerate()) {
            cplx expect{};
            for (const auto& n : b.box().enumerate())
                expect += a.coefficient(m - n) * b.coefficient(n) * sigma(t, n, m - n);
            EXPECT_LE(std::abs(op.coefficient(m) - expect), 1e-13);
        }
        EXPECT_LE(element_distance(op_multiply(a, unit(t, LatticeBox(2, 0))), a), 1e-15);
    }
}

TEST(Kernels, ElementaryKernelActsAsRankOne)
{
    SplitMix64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const ReducedTheta t = reduce(random_theta(2, rng));
        const LatticeBox box(2, 2);
        const MultiIndex m0 = random_index(rng, 2, 2), n0 = random_index(rng, 2, 2);
        const NCKernel k = tensor_kernel(monomial(t, m0, box), involution(monomial(t, n0, box)));
        const TorusElement x = monomial(t, n0, box);
        const TorusElement expect = monomial(t, m0, box);
        EXPECT_LE(rel_distance(apply_kernel(k, x), expect), 1e-14);
        EXPECT_LE(rel_distance(reference::partial_trace_action(k, x), expect), 1e-14);
    }
}

TEST(Kernels, UnitTensorUnitProjectsOntoConstants)
{
    SplitMix64 rng(4);
    const ReducedTheta t = reduce(random_theta(2, rng));
    const LatticeBox box(2, 2);
    const NCKernel k = tensor_kernel(unit(t, box), unit(t, box));
    const TorusElement x = random_element(t, box, rng);
    EXPECT_LE(rel_distance(apply_kernel(k, x), trace(x) * unit(t, box)), 1e-15);
}

TEST(Kernels, BesselKernelActsAsPotential)
{
    SplitMix64 rng(5);
    const ReducedTheta t = reduce(random_theta(2, rng));
    const LatticeBox box(2, 3);
    for (double a : {0.0, 0.5, 1.0, 2.0}) {
        const TorusElement x = random_element(t, box, rng);
        EXPECT_LE(rel_distance(apply_kernel(bessel_kernel(a, box, t), x), apply_multiplier(bessel_symbol(-a), x)),
                  1e-14);
    }
}

TEST(Kernels, ClosedFormMatchesPartialTraceOracle)
{
    SplitMix64 rng(6);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const ReducedTheta t = reduce(random_theta(2, rng));
        const LatticeBox box(2, int(rng() % 3));
        const NCKernel k = random_dense_kernel(t, box, rng);
        const TorusElement x = random_element(t, LatticeBox(2, int(rng() % 3)), rng);
        worst = std::max(worst, rel_distance(apply_kernel(k, x), reference::partial_trace_action(k, x)));
    }
    EXPECT_LE(worst, 1e-11);
}

TEST(Kernels, ApplyIsBilinear)
{
    SplitMix64 rng(7);
    const ReducedTheta t = reduce(random_theta(2, rng));
    const LatticeBox box(2, 2);
    const NCKernel k1 = random_dense_kernel(t, box, rng), k2 = random_dense_kernel(t, box, rng);
    const TorusElement x = random_element(t, box, rng), y = random_element(t, box, rng);
    const cplx a(0.3, -1.2), b(2.0, 0.5);
    EXPECT_LE(rel_distance(apply_kernel(a * k1 + b * k2, x), a * apply_kernel(k1, x) + b * apply_kernel(k2, x)),
              1e-13);
    EXPECT_LE(rel_distance(apply_kernel(k1, a * x + b * y), a * apply_kernel(k1, x) + b * apply_kernel(k1, y)),
              1e-13);
    EXPECT_THROW(apply_kernel(k1, unit(reduce(ThetaMatrix::zero(2)), box)), ValidationError);
}

TEST(Kernels, KernelMatrixColumns)
{
    SplitMix64 rng(8);
    for (int n = 0; n <= 3; ++n) {
        const ReducedTheta t = reduce(random_theta(2, rng));
        const LatticeBox box(2, n);
        const NCKernel k = random_dense_kernel(t, box, rng);
        const OperatorMatrix km = kernel_matrix(k);
        for (std::size_t c = 0; c < box.cardinality(); ++c) {
            const ComplexVector col = coefficient_vector(apply_kernel(k, monomial(t, box.point(c), box)), box);
            EXPECT_LE((km.entries.col(Eigen::Index(c)) - col).norm(), 1e-14);
        }
        EXPECT_NEAR(km.entries.norm(), l2_norm(k), 1e-12 * l2_norm(k));
    }
}

TEST(Kernels, BesselKernelMatrixIsDiagonalPotential)
{
    SplitMix64 rng(9);
    const ReducedTheta t = reduce(random_theta(2, rng));
    const LatticeBox box(2, 6);
    for (double a : {0.0, 0.5, 1.0, 2.0}) {
        const ComplexMatrix diff = kernel_matrix(bessel_kernel(a, box, t)).entries
                                   - multiplier_matrix(bessel_symbol(-a), box).entries;
        EXPECT_LE(diff.cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(Kernels, BesselKernelCoefficients)
{
    const ReducedTheta zero = reduce(ThetaMatrix::zero(2));
    const LatticeBox box(2, 2);
    const NCKernel k = bessel_kernel(0.0, box, zero);
    for (const auto& n : box.enumerate())
        EXPECT_EQ(k.coefficient(n, -n), cplx(1.0));
    EXPECT_NEAR(l2_norm(k), std::sqrt(double(box.cardinality())), 1e-14);

    const ReducedTheta t = reduce(default_theta(2));
    for (double a : {0.5, 1.5}) {
        double direct = 0.0;
        for (const auto& n : box.enumerate())
            direct += std::pow(1.0 + double(norm_sq(n)), -a);
        EXPECT_NEAR(std::pow(l2_norm(bessel_kernel(a, box, t)), 2), direct, 1e-13);
    }
}

TEST(Kernels, SobolevLift)
{
    SplitMix64 rng(10);
    const ReducedTheta t = reduce(default_theta(2));
    const LatticeBox box(2, 3);
    const NCKernel k = random_dense_kernel(t, box, rng);
    EXPECT_EQ((sobolev_lift(k, 0.0, 0.0).coeffs() - k.coeffs()).norm(), 0.0);
    const NCKernel back = sobolev_lift(sobolev_lift(k, 1.3, 2.1), -1.3, -2.1);
    EXPECT_LE((back.coeffs() - k.coeffs()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_DOUBLE_EQ(mixed_sobolev_norm(k, 0.7, 1.1), l2_norm(sobolev_lift(k, 0.7, 1.1)));
    EXPECT_DOUBLE_EQ(mixed_sobolev_norm(k, 0.0, 0.0), l2_norm(k));
    EXPECT_THROW(mixed_sobolev_norm(k, -0.1, 0.0), ValidationError);
}

TEST(Kernels, MixedSobolevNormOfProducts)
{
    SplitMix64 rng(11);
    const ReducedTheta t = reduce(default_theta(2));
    const LatticeBox box(2, 2);
    const MultiIndex m0{1, -2}, n0{2, 2};
    const NCKernel mono = tensor_kernel(monomial(t, m0, box), monomial(t, n0, box));
    EXPECT_NEAR(mixed_sobolev_norm(mono, 1.0, 2.0), std::sqrt(6.0) * 9.0, 1e-12);

    const TorusElement a = random_element(t, box, rng), b = random_element(t, box, rng);
    const NCKernel ab = tensor_kernel(a, b);
    EXPECT_NEAR(mixed_sobolev_norm(ab, 1.5, 0.5), sobolev_norm(a, 1.5) * sobolev_norm(b, 0.5),
                1e-12 * mixed_sobolev_norm(ab, 1.5, 0.5));
}

TEST(Kernels, FlipAdjoint)
{
    SplitMix64 rng(12);
    for (int n = 0; n <= 3; ++n) {
        const ReducedTheta t = reduce(random_theta(2, rng));
        const LatticeBox box(2, n);
        const NCKernel k = random_dense_kernel(t, box, rng);
        const ComplexMatrix km = kernel_matrix(k).entries;
        EXPECT_LE((kernel_matrix(flip_adjoint(k)).entries - km.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LE((flip_adjoint(flip_adjoint(k)).coeffs() - k.coeffs()).cwiseAbs().maxCoeff(), 1e-14);
    }
    const ReducedTheta t = reduce(default_theta(2));
    EXPECT_THROW(flip_adjoint(NCKernel(t, LatticeBox(2, 1), LatticeBox(2, 2))), ValidationError);
}

TEST(Kernels, FlipAdjointFixesHermitianKernel)
{
    SplitMix64 rng(13);
    const ReducedTheta t = reduce(random_theta(2, rng));
    const LatticeBox box(2, 2);
    const ComplexMatrix r = random_matrix(25, 25, rng);
    const ComplexMatrix h = r + r.adjoint();
    // invert kernel_matrix: c_{m,-p} = H(m,p) conj(sigma(p,-p))
    NCKernel k(t, box);
    for (std::size_t i = 0; i < box.cardinality(); ++i)
        for (std::size_t j = 0; j < box.cardinality(); ++j) {
            const MultiIndex p = box.point(j);
            k.at(box.point(i), -p) = h(Eigen::Index(i), Eigen::Index(j)) * std::conj(sigma(t, p, -p));
        }
    ASSERT_LE((kernel_matrix(k).entries - h).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((flip_adjoint(k).coeffs() - k.coeffs()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Kernels, Factorization)
{
    SplitMix64 rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        const ReducedTheta t = reduce(random_theta(2, rng));
        const NCKernel k = random_dense_kernel(t, LatticeBox(2, 3), rng);
        const double a1 = rng.uniform(0, 3), a2 = rng.uniform(0, 3);
        EXPECT_LE(factorization_error(k, a1, a2), 1e-12);
    }
    // no lift: both sides are T_k verbatim
    const NCKernel k = random_dense_kernel(reduce(default_theta(2)), LatticeBox(2, 2), rng);
    const ComplexMatrix lhs = multiplier_matrix(bessel_symbol(0.0), k.box1()).entries * kernel_matrix(k).entries;
    EXPECT_EQ((lhs - kernel_matrix(k).entries).norm(), 0.0);
    EXPECT_EQ(factorization_error(k, 0.0, 0.0), 0.0);
}

TEST(Kernels, SchwartzBound)
{
    const ReducedTheta t = reduce(default_theta(2));
    const LatticeBox box(2, 3);
    const NCKernel mono = tensor_kernel(monomial(t, {1, 2}, box), monomial(t, {-3, 0}, box));
    const SchwartzReport rep = schwartz_coefficients(mono, 1.0, 0.5, 3.0);
    EXPECT_NEAR(rep.worst_ratio, 1.0, 1e-14);
    EXPECT_EQ(rep.worst_m, (MultiIndex{1, 2}));
    EXPECT_EQ(rep.worst_n, (MultiIndex{-3, 0}));
    EXPECT_TRUE(rep.passed);

    SplitMix64 rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        const NCKernel h = random_kernel(t, 4, 6.5, 6.5, rng());
        const SchwartzReport r = schwartz_coefficients(h, 1.0, 1.0, 3.0);
        EXPECT_LE(r.worst_ratio, 1.0);
        for (Eigen::Index i = 0; i < r.bound.rows(); ++i)
            for (Eigen::Index j = 0; j < r.bound.cols(); ++j)
                EXPECT_LE(std::abs(r.coefficients(i, j)), r.bound(i, j) * (1.0 + 1e-12));
        EXPECT_EQ(h.coefficient({5, 0}, {0, 0}), cplx(0.0));
    }
    EXPECT_THROW(schwartz_coefficients(mono, 1.0, 1.0, 2.0), ValidationError);
}

TEST(Kernels, RandomKernelEnvelopeAndDeterminism)
{
    const ReducedTheta t = reduce(default_theta(2));
    const NCKernel a = random_kernel(t, 3, 1.5, 2.5, 42);
    const NCKernel b = random_kernel(t, 3, 1.5, 2.5, 42);
    const NCKernel c = random_kernel(t, 3, 1.5, 2.5, 43);
    EXPECT_EQ((a.coeffs() - b.coeffs()).norm(), 0.0);
    EXPECT_GT((a.coeffs() - c.coeffs()).norm(), 0.0);
    const LatticeBox& box = a.box1();
    for (std::size_t i = 0; i < box.cardinality(); ++i)
        for (std::size_t j = 0; j < box.cardinality(); ++j) {
            const double env = std::pow(1.0 + double(norm_sq(box.point(i))), -0.75)
                               * std::pow(1.0 + double(norm_sq(box.point(j))), -1.25);
            EXPECT_NEAR(std::abs(a.coeffs()(Eigen::Index(i), Eigen::Index(j))), env, 1e-15);
            EXPECT_NEAR(std::abs(c.coeffs()(Eigen::Index(i), Eigen::Index(j))), env, 1e-15);
        }
    EXPECT_THROW(random_kernel(t, 2, -1.0, 0.0, 1), ValidationError);
}

TEST(Kernels, RandomKernelNestsAcrossBoxes)
{
    const ReducedTheta t = reduce(default_theta(2));
    const NCKernel small = random_kernel(t, 2, 1.0, 1.0, 9);
    const NCKernel large = random_kernel(t, 4, 1.0, 1.0, 9);
    for (const auto& m : small.box1().enumerate())
        for (const auto& n : small.box2().enumerate())
            EXPECT_EQ(small.coefficient(m, n), large.coefficient(m, n));
}

TEST(Kernels, MixedSobolevNormStabilizesIffEnvelopeDecaysEnough)
{
    const ReducedTheta t = reduce(default_theta(2));
    const double a1 = 1.0, a2 = 0.5, half_d = 1.0;
    auto increment = [&](double margin) {
        const double n8 = mixed_sobolev_norm(random_kernel(t, 8, a1 + half_d + margin, a2 + half_d + margin, 1), a1, a2);
        const double n10 = mixed_sobolev_norm(random_kernel(t, 10, a1 + half_d + margin, a2 + half_d + margin, 1), a1, a2);
        return (n10 - n8) / n8;
    };
    EXPECT_LT(increment(0.5), 0.10);
    EXPECT_GT(increment(-0.5), 0.10);
}

TEST(Kernels, HilbertSchmidtIdentity)
{
    SplitMix64 rng(16);
    for (int trial = 0; trial < 10; ++trial) {
        const ReducedTheta t = reduce(random_theta(2, rng));
        const NCKernel k = random_kernel(t, 3, rng.uniform(0, 3), rng.uniform(0, 3), rng());
        const double s2 = schatten_norm(singular_values(kernel_matrix(k)), 2.0);
        EXPECT_NEAR(s2, l2_norm(k), 1e-12 * l2_norm(k));
    }
}
