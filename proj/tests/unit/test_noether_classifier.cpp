#include "oracles.hpp"

#include "symclass/lie_classifier.hpp"
#include "symclass/noether_classifier.hpp"
#include "symclass/verifier.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace symclass;
using symclass::testing::make_generator;
using symclass::testing::vec;

namespace {

std::vector<const PointSymmetry*> generators(const std::vector<NoetherSymmetry>& syms) {
    std::vector<const PointSymmetry*> out;
    for (const auto& s : syms) out.push_back(&s.generator);
    return out;
}

bool has_multiple_of(const std::vector<NoetherSymmetry>& syms, const PointSymmetry& target) {
    return std::any_of(syms.begin(), syms.end(), [&](const NoetherSymmetry& s) {
        return independence_rank(std::vector<const PointSymmetry*>{&s.generator, &target}) == 1;
    });
}

std::function<Vec(const Vec&)> homothety() {
    return [](const Vec& x) { return x; };
}

bool is_rotation(const NoetherSymmetry& s) {
    return s.generator.xi_terms().empty() && s.generator.eta_terms().size() == 1 &&
           s.generator.eta_terms().front().label.rfind("X_", 0) == 0;
}

void expect_all_verified(const std::vector<NoetherSymmetry>& syms, const MetricSpace& space, const ScalarField& V,
                         const OmegaProfile& w) {
    for (const auto& s : syms) {
        EXPECT_TRUE(s.generator.xi_depends_on_time_only()) << s.describe();
        const auto c = check_noether_condition(s, space, V, w);
        const auto p = check_noether_split(s, space, V, w);
        const auto l = check_determining_eqs(s.generator, space, V, w);
        EXPECT_TRUE(c.passed) << s.describe() << " condition " << c.max;
        EXPECT_TRUE(p.passed) << s.describe() << " split " << p.max;
        EXPECT_TRUE(l.passed) << s.describe() << " lie " << l.max;
    }
}

}  // namespace

TEST(NoetherClassifier, KeplerSpecialProfile) {
    const auto E = MetricSpace::euclidean(3);
    const auto V = ScalarField::kepler();
    const auto w = OmegaProfile::power_law(-0.5);
    const auto r = classify_noether(E, V, w, euclidean_catalog(3));
    ASSERT_EQ(r.symmetries.size(), 4u);
    EXPECT_EQ(std::count_if(r.symmetries.begin(), r.symmetries.end(), is_rotation), 3);
    EXPECT_TRUE(has_multiple_of(r.symmetries, make_generator(3, {0, 2}, homothety(), 1.0, "H")));
    expect_all_verified(r.symmetries, E, V, w);

    // Same span as the Lie symmetries.
    const auto lie = classify_lie(E, V, w, euclidean_catalog(3));
    auto all = generators(r.symmetries);
    for (const auto& s : lie.symmetries) all.push_back(&s);
    EXPECT_EQ(independence_rank(all), 4u);
    EXPECT_EQ(independence_rank(lie.symmetries), 4u);
}

TEST(NoetherClassifier, CentralPowerSpecialProfile) {
    const auto E = MetricSpace::euclidean(3);
    for (double n : {3.0, 1.5}) {
        const auto V = ScalarField::central_power(n);
        const auto w = OmegaProfile::power_law(-(n + 2.0) / 2.0);
        const auto r = classify_noether(E, V, w, euclidean_catalog(3));
        EXPECT_EQ(r.symmetries.size(), 4u) << n;
        EXPECT_TRUE(has_multiple_of(r.symmetries, make_generator(3, {0, 2}, homothety(), 1.0, "H"))) << n;
        expect_all_verified(r.symmetries, E, V, w);
    }
}

TEST(NoetherClassifier, ExceptionalOnlyRotations) {
    const auto E = MetricSpace::euclidean(3);
    const auto V = ScalarField::exceptional();
    for (const auto& w : {OmegaProfile::power_law(1), OmegaProfile::power_law(-1), OmegaProfile::power_law(3),
                          OmegaProfile::inverse_square_affine(1, 2)}) {
        const auto r = classify_noether(E, V, w, euclidean_catalog(3));
        ASSERT_EQ(r.symmetries.size(), 3u) << w.name();
        EXPECT_TRUE(std::all_of(r.symmetries.begin(), r.symmetries.end(), is_rotation));
        // The homothety branch exists and is rejected for its trivial T.
        const auto& rej = r.case_II.rejected;
        EXPECT_TRUE(std::any_of(rej.begin(), rej.end(), [](const Rejection& x) {
            return x.generator == "H" && x.reason.find("trivial") != std::string::npos;
        })) << w.name();
    }
}

TEST(NoetherClassifier, OscillatorFirstIntegral) {
    const auto E = MetricSpace::euclidean(1);
    const auto V = ScalarField::quadratic();
    const auto w = OmegaProfile::power_law(1);
    const auto r = classify_noether(E, V, w, euclidean_catalog(1));
    EXPECT_EQ(r.symmetries.size(), 5u);
    expect_all_verified(r.symmetries, E, V, w);
    std::size_t translations = 0;
    for (const auto& s : r.symmetries) {
        if (!s.generator.xi_terms().empty()) continue;
        ++translations;
        // I = −g(η, ẋ) + f = −T ẋ + T,t x with T'' = −ωT.
        const auto& T = s.generator.coefficients.at("T");
        const auto I = noether_integral(s, E, V, w);
        for (double t : {1.2, 2.5, 4.0}) {
            const Vec x = vec({0.7}), v = vec({-0.3});
            EXPECT_NEAR(I(t, x, v), -T(t) * v(0) + T.derivative(t) * x(0), 1e-10);
        }
    }
    EXPECT_EQ(translations, 2u);
}

TEST(NoetherClassifier, RotationIntegralIsAngularMomentum) {
    const auto E = MetricSpace::euclidean(3);
    const auto V = ScalarField::kepler();
    const auto w = OmegaProfile::power_law(2);
    const auto r = classify_noether(E, V, w, euclidean_catalog(3));
    const auto it = std::find_if(r.symmetries.begin(), r.symmetries.end(), [](const NoetherSymmetry& s) {
        return is_rotation(s) && s.generator.eta_terms().front().label == "X_12";
    });
    ASSERT_NE(it, r.symmetries.end());
    const auto I = noether_integral(*it, E, V, w);
    const Vec x = vec({1.0, 2.0, -0.5}), v = vec({0.3, -0.4, 0.9});
    const Vec y = it->generator.eta(1.0, x);
    // X_12 components (x2, −x1) up to the stored scale.
    const double scale = y(0) / x(1);
    EXPECT_NEAR(I(1.7, x, v), -scale * (x(1) * v(0) - x(0) * v(1)), 1e-12);
    EXPECT_EQ(gauge_function(*it)(2.0, x), 0.0);
}

TEST(NoetherClassifier, CaseOneGaugeIsOmegaAntiderivative) {
    // V = x in E¹: the translation needs f = c2 ∫ω.
    const auto E = MetricSpace::euclidean(1);
    const auto V = ScalarField::polynomial(Polynomial::parse("x1", 1));
    const double a = 2.0;
    const auto w = OmegaProfile::power_law(a);
    const auto r = classify_noether(E, V, w, euclidean_catalog(1));
    const auto it = std::find_if(r.symmetries.begin(), r.symmetries.end(),
                                 [](const NoetherSymmetry& s) { return s.case_tag == "I"; });
    ASSERT_NE(it, r.symmetries.end());
    const double c2 = it->constants.at("c2");
    ASSERT_GT(std::abs(c2), 1e-6);
    const auto f = gauge_function(*it);
    const Vec x = vec({0.4});
    for (double t : {1.5, 3.0}) {
        const double expect = c2 * (std::pow(t, a + 1) - 1.0) / (a + 1);
        EXPECT_NEAR(f(t, x) - f(1.0, x), expect, 1e-10);
    }
    expect_all_verified(r.symmetries, E, V, w);
}

TEST(NoetherClassifier, CaseTwoGaugeUsesTimeDerivative) {
    // E¹ oscillator translations: f = T,t x.
    const auto E = MetricSpace::euclidean(1);
    const auto r = classify_noether(E, ScalarField::quadratic(), OmegaProfile::power_law(1), euclidean_catalog(1));
    for (const auto& s : r.symmetries) {
        if (!s.generator.xi_terms().empty()) continue;
        const auto& T = s.generator.coefficients.at("T");
        const auto f = gauge_function(s);
        for (double t : {1.1, 2.2}) EXPECT_NEAR(f(t, vec({1.3})), T.derivative(t) * 1.3 + (s.K ? (*s.K)(t) : 0.0), 1e-10);
    }
}

// Property: Noether symmetries are Lie symmetries.
TEST(NoetherClassifierProperty, NoetherSubsetOfLie) {
    const auto E = MetricSpace::euclidean(3);
    const std::vector<std::pair<ScalarField, OmegaProfile>> problems = {
        {ScalarField::kepler(), OmegaProfile::power_law(-0.5)},
        {ScalarField::quadratic(), OmegaProfile::power_law(1)},
        {ScalarField::central_power(3), OmegaProfile::power_law(-2.5)}};
    for (const auto& [V, w] : problems) {
        const auto n = classify_noether(E, V, w, euclidean_catalog(3));
        const auto l = classify_lie(E, V, w, euclidean_catalog(3));
        auto all = generators(n.symmetries);
        for (const auto& s : l.symmetries) all.push_back(&s);
        EXPECT_EQ(independence_rank(all), independence_rank(l.symmetries)) << V.name();
        expect_all_verified(n.symmetries, E, V, w);
    }
}
