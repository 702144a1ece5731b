#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>
#include <stdexcept>

#include <gtest/gtest.h>

#include <nctorus/multipliers.hpp>
#include <nctorus/sampling.hpp>
#include <nctorus/schatten.hpp>

using namespace nctorus;

namespace {

ReducedTheta theta2() { return reduce(default_theta(2)); }

} // namespace

TEST(Multipliers, ApplyConstantAndBessel)
{
    SplitMix64 rng(1);
    const TorusElement x = random_element(theta2(), LatticeBox(2, 3), rng);
    EXPECT_LE(element_distance(apply_multiplier(constant_symbol(1.0), x), x), 0.0);

    const TorusElement u = monomial(theta2(), {1, 1}, LatticeBox(2, 1));
    const TorusElement v = apply_multiplier(bessel_symbol(-2.0), u);
    EXPECT_NEAR(v.coefficient({1, 1}).real(), 1.0 / 3.0, 1e-15);
}

TEST(Multipliers, CompositionIsProductSymbol)
{
    SplitMix64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const TorusElement x = random_element(theta2(), LatticeBox(2, 3), rng);
        const auto g = bessel_symbol(rng.uniform(-3, 3));
        const auto h = riesz_symbol(rng.uniform(-3, 3));
        const TorusElement gh = apply_multiplier(g, apply_multiplier(h, x));
        const TorusElement hg = apply_multiplier(h, apply_multiplier(g, x));
        const TorusElement prod = apply_multiplier(product_symbol(g, h), x);
        EXPECT_LE(element_distance(gh, prod), 1e-12 * l2_norm(prod));
        EXPECT_LE(element_distance(hg, prod), 1e-12 * l2_norm(prod));
    }
}

TEST(Multipliers, SymbolValues)
{
    EXPECT_NEAR(bessel_symbol(-2.0)({1, 1}).real(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(riesz_symbol(2.0)({3, 4}).real(), 25.0, 1e-12);
    EXPECT_EQ(riesz_symbol(-1.0)({0, 0}), cplx(0.0));
    for (const auto& n : LatticeBox(3, 3).enumerate())
        for (double a : {-2.5, 0.3, 1.0, 4.0})
            EXPECT_NEAR((bessel_symbol(a)(n) * bessel_symbol(-a)(n)).real(), 1.0, 1e-14);
}

TEST(Multipliers, RieszAnnihilatesMean)
{
    SplitMix64 rng(3);
    const TorusElement x = random_element(theta2(), LatticeBox(2, 2), rng);
    const TorusElement y = apply_multiplier(riesz_symbol(1.0), x);
    EXPECT_EQ(trace(y), cplx(0.0));
    EXPECT_NEAR(std::abs(y.coefficient({1, 0}) - x.coefficient({1, 0})), 0.0, 1e-15);
}

TEST(Multipliers, TinyValuesFlushedToZero)
{
    EXPECT_EQ(bessel_weight({100, 100}, -400.0), 0.0);
    EXPECT_GT(bessel_weight({1, 0}, -400.0), 0.0);
}

TEST(Multipliers, MatrixBesselMinusTwoOnUnitBox)
{
    const LatticeBox box(2, 1);
    // (1 + |n|^2)^{-1} over the nine points in enumerate order
    std::vector<double> oracle;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            oracle.push_back(1.0 / (1.0 + a * a + b * b));
    const std::vector<double> frozen{1.0 / 3, 0.5, 1.0 / 3, 0.5, 1.0, 0.5, 1.0 / 3, 0.5, 1.0 / 3};
    ASSERT_EQ(oracle, frozen);

    const OperatorMatrix m = multiplier_matrix(bessel_symbol(-2.0), box);
    for (Eigen::Index i = 0; i < 9; ++i)
        for (Eigen::Index j = 0; j < 9; ++j) {
            if (i == j)
                EXPECT_NEAR(m.entries(i, i).real(), frozen[std::size_t(i)], 1e-15);
            else
                EXPECT_EQ(m.entries(i, j), cplx(0.0));
        }

    const OperatorMatrix id = multiplier_matrix(constant_symbol(1.0), LatticeBox(3, 1));
    EXPECT_EQ((id.entries - ComplexMatrix::Identity(27, 27)).norm(), 0.0);
}

TEST(Multipliers, BesselInverseMatrix)
{
    const LatticeBox box(2, 5);
    for (double a : {0.5, 1.0, 2.0, 3.7}) {
        const ComplexMatrix p = multiplier_matrix(bessel_symbol(a), box).entries
                                * multiplier_matrix(bessel_symbol(-a), box).entries;
        EXPECT_LE((p - ComplexMatrix::Identity(p.rows(), p.cols())).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(Multipliers, SymbolFailureNamesIndex)
{
    const SymbolFunction bad{[](const MultiIndex& n) -> cplx {
                                 if (n == MultiIndex{1, -1})
                                     throw std::runtime_error("pole");
                                 return 1.0;
                             },
                             "bad"};
    const TorusElement x = unit(theta2(), LatticeBox(2, 1));
    try {
        apply_multiplier(bad, x);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("(1,-1)"), std::string::npos) << e.what();
    }
    const SymbolFunction nan_sym{[](const MultiIndex&) { return cplx(std::nan("")); }, "nan"};
    EXPECT_THROW(multiplier_matrix(nan_sym, LatticeBox(2, 0)), ValidationError);
}

TEST(Multipliers, SobolevNorm)
{
    SplitMix64 rng(4);
    const TorusElement x = random_element(theta2(), LatticeBox(2, 3), rng);
    EXPECT_NEAR(sobolev_norm(x, 0.0), l2_norm(x), 1e-14);

    const MultiIndex m{2, -1};
    const TorusElement u = monomial(theta2(), m, LatticeBox(2, 2));
    for (double a : {-1.0, 0.5, 2.0})
        EXPECT_NEAR(sobolev_norm(u, a), std::pow(6.0, a / 2), 1e-13);

    double prev = 0.0;
    for (double a = -3.0; a <= 3.0; a += 0.25) {
        const double v = sobolev_norm(x, a);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(Multipliers, BesselSpectrumIsSortedSymbol)
{
    const LatticeBox box(2, 4);
    const SingularSpectrum diag = multiplier_spectrum(bessel_symbol(-1.5), box);
    std::vector<double> direct;
    for (const auto& n : box.enumerate())
        direct.push_back(std::pow(1.0 + double(norm_sq(n)), -0.75));
    std::sort(direct.begin(), direct.end(), std::greater<>());
    ASSERT_EQ(diag.size(), direct.size());
    for (std::size_t i = 0; i < direct.size(); ++i)
        EXPECT_NEAR(diag[i], direct[i], 1e-15);

    const SingularSpectrum via_matrix = singular_values(multiplier_matrix(bessel_symbol(-1.5), box));
    for (std::size_t i = 0; i < direct.size(); ++i)
        EXPECT_NEAR(via_matrix[i], direct[i], 1e-15);
}

TEST(Multipliers, WeakSchattenMembership)
{
    for (double alpha : {1.0, 2.0}) {
        const double p = 2.0 / alpha;
        double prev = 0.0;
        for (int n : {10, 20, 40}) {
            const double w = weak_norm(multiplier_spectrum(bessel_symbol(-alpha), LatticeBox(2, n)), p);
            EXPECT_GE(w, prev);
            EXPECT_LT(w, 10.0);
            prev = w;
        }
    }
}

TEST(Multipliers, SchattenSumConvergesAboveDOverP)
{
    for (double p : {2.0, 4.0}) {
        const double alpha = 2.0 / p + 0.5;
        const double s20 = schatten_norm(multiplier_spectrum(bessel_symbol(-alpha), LatticeBox(2, 20)), p);
        const double s40 = schatten_norm(multiplier_spectrum(bessel_symbol(-alpha), LatticeBox(2, 40)), p);
        EXPECT_LT((s40 - s20) / s20, 0.05) << "p=" << p;
    }
}
