#include "oracles.hpp"

#include "symclass/collineation.hpp"
#include "symclass/constraint_solve.hpp"
#include "symclass/errors.hpp"
#include "symclass/metric_space.hpp"
#include "symclass/sampling.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace symclass;
using symclass::testing::vec;

namespace {

const Collineation& by_label(const std::vector<Collineation>& cat, const std::string& label) {
    const auto it = std::find_if(cat.begin(), cat.end(), [&](const Collineation& c) { return c.label() == label; });
    if (it == cat.end()) throw std::runtime_error("no catalog entry " + label);
    return *it;
}

// g = diag(1, x1²)
MetricSpace toy_space() {
    std::vector<std::vector<Polynomial>> g(2, std::vector<Polynomial>(2, Polynomial(2)));
    g[0][0] = Polynomial::constant(2, 1.0);
    g[1][1] = Polynomial::parse("x1^2", 2);
    return MetricSpace::polynomial_metric(std::move(g));
}

// Christoffels of diag(1, x1²) by hand: Γ¹₂₂ = −x1, Γ²₁₂ = Γ²₂₁ = 1/x1.
Tensor3 toy_christoffel(const Vec& x) {
    Tensor3 G(2);
    G(0, 1, 1) = -x(0);
    G(1, 0, 1) = G(1, 1, 0) = 1.0 / x(0);
    return G;
}

}  // namespace

TEST(EuclideanCatalog, Counts) {
    // S_1, H, A_1, P_1: no rotations on the line.
    EXPECT_EQ(euclidean_catalog(1, CatalogScope::WithoutShears).size(), 4u);
    EXPECT_EQ(euclidean_catalog(3, CatalogScope::WithoutShears).size(), 13u);
    // Symmetric shears complete the affine algebra: n² + n affine vectors plus n special PCs.
    EXPECT_EQ(euclidean_catalog(2).size(), 2u + 1u + 1u + 2u + 1u + 2u);
    EXPECT_EQ(euclidean_catalog(3).size(), 16u);
}

TEST(EuclideanCatalog, RotationComponents) {
    const auto cat = euclidean_catalog(2);
    const Vec y = by_label(cat, "X_12").value(vec({1, 0}));
    EXPECT_EQ(std::abs(y(0)), 0.0);
    EXPECT_EQ(std::abs(y(1)), 1.0);
}

TEST(EuclideanCatalog, ClassesAndPotentials) {
    const auto cat = euclidean_catalog(3);
    const auto& H = by_label(cat, "H");
    EXPECT_EQ(H.cls(), CollineationClass::GradientHV);
    EXPECT_EQ(H.psi(), 1.0);
    const Vec x = vec({1, -2, 0.5});
    EXPECT_NEAR(H.potential_value(x), 0.5 * x.squaredNorm(), 1e-15);
    EXPECT_EQ(by_label(cat, "S_2").cls(), CollineationClass::GradientKV);
    EXPECT_EQ(by_label(cat, "X_13").cls(), CollineationClass::NongradientKV);
    EXPECT_EQ(by_label(cat, "A_1").cls(), CollineationClass::AffineCollineation);
    EXPECT_EQ(by_label(cat, "P_3").cls(), CollineationClass::SpecialPC);
}

TEST(MetricSpace, EuclideanChristoffelsVanish) {
    const auto E = MetricSpace::euclidean(3);
    for (const auto& x : sample_points(20, 3, 3, 5.0, 0.0)) EXPECT_EQ(E.christoffel(x).max_abs(), 0.0);
}

TEST(MetricSpace, ToyMetricChristoffel) {
    const auto S = toy_space();
    const Tensor3 G = S.christoffel(vec({2, 0}));
    EXPECT_NEAR(G(1, 0, 1), 0.5, 1e-15);
    EXPECT_NEAR(G(1, 1, 0), 0.5, 1e-15);
    EXPECT_NEAR(G(0, 1, 1), -2.0, 1e-15);
}

TEST(MetricSpace, ToyMetricMatchesHandChristoffels) {
    const auto S = toy_space();
    for (const auto& x : sample_points(100, 2, 8, 3.0, 0.0, [](const Vec& p) { return std::abs(p(0)) > 0.2; })) {
        const Tensor3 G = S.christoffel(x), R = toy_christoffel(x);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(G(i, j, k), R(i, j, k), 1e-12);
    }
}

TEST(MetricSpace, OpaqueEvaluatorAgreesWithPolynomial) {
    const auto P = toy_space();
    const auto O = MetricSpace::from_evaluator(2, [](const Vec& x) {
        Mat g = Mat::Identity(2, 2);
        g(1, 1) = x(0) * x(0);
        return g;
    });
    const Vec x = vec({1.3, 0.4});
    const Tensor3 a = P.christoffel(x), b = O.christoffel(x);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(a(i, j, k), b(i, j, k), 1e-7);
}

TEST(MetricSpace, OutOfChart) {
    const auto S = toy_space();
    EXPECT_FALSE(S.in_chart(vec({0, 1})));
    EXPECT_THROW(S.christoffel(vec({0, 1})), OutOfChart);
}

// Property: Γ^i_jk = Γ^i_kj.
TEST(MetricSpaceProperty, ChristoffelSymmetric) {
    std::vector<std::vector<Polynomial>> g(2, std::vector<Polynomial>(2, Polynomial(2)));
    g[0][0] = Polynomial::parse("1 + x2^2", 2);
    g[0][1] = g[1][0] = Polynomial::parse("0.3*x1", 2);
    g[1][1] = Polynomial::parse("2 + x1^2", 2);
    const auto S = MetricSpace::polynomial_metric(g);
    for (const auto& x : sample_points(100, 2, 21, 2.0, 0.0, [&S](const Vec& p) { return S.in_chart(p); })) {
        const Tensor3 G = S.christoffel(x);
        for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(G(i, 0, 1), G(i, 1, 0), 1e-14);
        const Mat m = S.metric(x);
        EXPECT_NEAR(m(0, 1), m(1, 0), 0.0);
        EXPECT_GT(m.determinant(), 0.0);
    }
}

TEST(LieDerivative, MetricExamples) {
    const auto E = MetricSpace::euclidean(3);
    const auto cat = euclidean_catalog(3);
    const Vec x = vec({0.3, -1.2, 2.0});
    EXPECT_LT(lie_derivative_metric(by_label(cat, "X_12"), E, x).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((lie_derivative_metric(by_label(cat, "H"), E, x) - 2.0 * Mat::Identity(3, 3)).cwiseAbs().maxCoeff(),
              1e-15);
    const auto E2 = MetricSpace::euclidean(2);
    const Mat LA = lie_derivative_metric(by_label(euclidean_catalog(2), "A_1"), E2, vec({1, 1}));
    EXPECT_NEAR(LA(0, 0), 2.0, 1e-15);
    EXPECT_EQ(LA(0, 1), 0.0);
    EXPECT_EQ(LA(1, 0), 0.0);
    EXPECT_EQ(LA(1, 1), 0.0);
}

TEST(LieDerivative, ConnectionExamples) {
    const auto E = MetricSpace::euclidean(3);
    const auto cat = euclidean_catalog(3);
    const Vec x = vec({0.7, 0.1, -0.4});
    for (const auto& Y : cat)
        if (Y.is_affine()) EXPECT_LT(lie_derivative_connection(Y, E, x).max_abs(), 1e-14) << Y.label();
    // P_1 = x1 x^i ∂_i: ∂_j∂_k P^i = δ^i_j δ_1k + δ^i_k δ_1j.
    const Tensor3 L = lie_derivative_connection(by_label(cat, "P_1"), E, x);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) {
                const double expect = (i == j && k == 0 ? 1.0 : 0.0) + (i == k && j == 0 ? 1.0 : 0.0);
                EXPECT_NEAR(L(i, j, k), expect, 1e-14);
            }
}

TEST(LieDerivative, ToyMetricKillingVector) {
    // ∂_2 is a Killing vector of diag(1, x1²); ∂_1 is not.
    const auto S = toy_space();
    const Collineation K("K", CollineationClass::NongradientKV, {Polynomial(2), Polynomial::constant(2, 1.0)});
    const Collineation N("N", CollineationClass::NongradientKV, {Polynomial::constant(2, 1.0), Polynomial(2)});
    const Vec x = vec({1.5, 0.2});
    EXPECT_LT(lie_derivative_metric(K, S, x).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_GT(collineation_residual(N, S, x), 1.0);
    const auto check = verify_catalog({K, N}, S, sample_points(30, 2, 4, 2.0, 0.0, [&S](const Vec& p) { return S.in_chart(p); }));
    ASSERT_EQ(check.accepted.size(), 1u);
    EXPECT_EQ(check.accepted.front().label(), "K");
    ASSERT_EQ(check.rejected.size(), 1u);
    EXPECT_EQ(check.rejected.front().first, "N");
}

// Property: every built-in vector satisfies its defining identity.
TEST(CatalogProperty, ClassIdentitiesHold) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto E = MetricSpace::euclidean(n);
        const auto pts = sample_points(100, n, 1234 + n, 5.0, 0.0);
        for (const auto& Y : euclidean_catalog(n))
            for (const auto& x : pts) EXPECT_LT(collineation_residual(Y, E, x), 1e-10) << Y.label();
    }
}

TEST(CatalogProperty, GradientPotentialsMatchComponents) {
    for (const auto& Y : euclidean_catalog(3)) {
        if (!Y.is_gradient()) continue;
        for (const auto& x : sample_points(30, 3, 77, 3.0, 0.0)) {
            Vec fd(3);
            for (int i = 0; i < 3; ++i) {
                Vec a = x, b = x;
                a(i) += 1e-6;
                b(i) -= 1e-6;
                fd(i) = (Y.potential_value(a) - Y.potential_value(b)) / 2e-6;
            }
            EXPECT_LT((fd - Y.value(x)).cwiseAbs().maxCoeff(), 1e-8) << Y.label();
        }
    }
}

TEST(PotentialCondition, HomotheticBracketOfCentralPower) {
    const auto E = MetricSpace::euclidean(3);
    const auto cat = euclidean_catalog(3);
    const auto pts = sample_points(60, 3, 9, 3.0, 0.5);
    for (double n : {-1.0, 3.0, 4.5}) {
        const auto V = ScalarField::central_power(n);
        const auto sol = potential_condition_solve(by_label(cat, "H"), V, ConditionForm::BracketScaling, E, pts);
        ASSERT_TRUE(sol.feasible());
        // V' is homogeneous of degree n − 1, so L_H V' = (n − 1)V' − V'.
        EXPECT_NEAR(sol["d1"], 2.0 - n, 1e-8) << n;
    }
}

TEST(PotentialCondition, RotationAndTranslation) {
    const auto E = MetricSpace::euclidean(3);
    const auto cat = euclidean_catalog(3);
    const auto pts = sample_points(60, 3, 9, 3.0, 0.5);
    const auto V = ScalarField::kepler();
    const auto rot = potential_condition_solve(by_label(cat, "X_12"), V, ConditionForm::BracketGradient, E, pts);
    ASSERT_TRUE(rot.feasible());
    EXPECT_NEAR(rot["d0"], 0.0, 1e-9);
    EXPECT_NEAR(rot["m"], 0.0, 1e-9);
    const auto tr = potential_condition_solve(by_label(cat, "S_1"), V, ConditionForm::BracketGradient, E, pts);
    EXPECT_FALSE(tr.feasible());
}
