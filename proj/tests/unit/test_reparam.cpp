#include "oracles.hpp"

#include "symclass/errors.hpp"
#include "symclass/reparam.hpp"
#include "symclass/scalar_field.hpp"
#include "symclass/verifier.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace symclass;
using symclass::testing::DampedOscillator;
using symclass::testing::EulerOscillator;
using symclass::testing::vec;

TEST(DampedToTimeDep, ConstantDampingGivesInverseSquare) {
    // φ = −1/2 anchored at t0 = 2: S = 2 e^{(t−2)/2}, ω(s) = (2/s)^2.
    const auto r = damped_to_timedep(DampingProfile::constant(-0.5), Interval::closed(2, 10));
    for (double t : {2.0, 3.5, 7.0, 10.0}) {
        const double s = r.map.forward(t);
        EXPECT_NEAR(s, 2 * std::exp(0.5 * (t - 2)), 1e-9 * s);
        EXPECT_NEAR(r.omega.eval(s), 4 / (s * s), 1e-9 * r.omega.eval(s));
    }
    EXPECT_NEAR(r.map.s_domain().hi, 2 * std::exp(4.0), 1e-7);
}

TEST(DampedToTimeDep, ZeroDampingIsIdentity) {
    const auto r = damped_to_timedep(DampingProfile::constant(0.0), Interval::closed(1, 5));
    for (double t : {1.0, 2.5, 5.0}) {
        EXPECT_NEAR(r.map.forward(t), t, 1e-12);
        EXPECT_NEAR(r.omega.eval(t), 1.0, 1e-12);
    }
}

TEST(DampedToTimeDep, PowerLawDamping) {
    // φ = 2/t from t0 = 1: e^{−Φ} = t^{−2}, S = 2 − 1/t, ω = t^4.
    const auto r = damped_to_timedep(DampingProfile::power_law(2), Interval::closed(1, 4));
    for (double t : {1.0, 2.0, 4.0}) {
        const double s = r.map.forward(t);
        EXPECT_NEAR(s, 2 - 1 / t, 1e-9);
        EXPECT_NEAR(r.omega.eval(s), std::pow(t, 4), 1e-8 * std::pow(t, 4));
    }
}

TEST(TimeDepToDamped, EulerProfileGivesConstantDamping) {
    const auto r = timedep_to_damped(OmegaProfile::inverse_square_scaled(2), Interval::closed(1, std::exp(4.0)));
    for (double t : {1.0, 3.0, 6.0, 9.0}) EXPECT_NEAR(r.damping.eval(t), -0.5, 1e-9);
    EXPECT_NEAR(r.map.t_domain().hi, 9.0, 1e-9);
}

TEST(TimeDepToDamped, ConstantOmegaGivesZeroDamping) {
    const auto one = OmegaProfile::mapped([](double) { return 1.0; }, [](double) { return 0.0; },
                                          Interval::closed(0, 10), "1");
    const auto r = timedep_to_damped(one, Interval::closed(1, 5));
    // The right end comes from a quadrature, so it may sit an ulp below 5.
    EXPECT_NEAR(r.map.t_domain().hi, 5.0, 1e-12);
    for (double t : {1.0, 3.0, r.map.t_domain().hi}) {
        EXPECT_NEAR(r.damping.eval(t), 0.0, 1e-12);
        EXPECT_NEAR(r.map.forward(t), t, 1e-10);
    }
}

TEST(TimeDepToDamped, NonPositiveOmegaRejected) {
    const auto neg = OmegaProfile::mapped([](double s) { return 2.0 - s; }, [](double s) { return -1 / (2.0 - s); },
                                          Interval::open(0, 10), "2 - s");
    EXPECT_THROW(timedep_to_damped(neg, Interval::closed(1, 3)), NegativeOmega);
}

TEST(MapTrajectory, IdentityMapKeepsCurve) {
    const auto r = damped_to_timedep(DampingProfile::constant(0.0), Interval::closed(1, 4));
    const auto traj = integrate(MetricSpace::euclidean(1), ScalarField::quadratic(), OmegaProfile::power_law(1),
                                vec({1}), vec({0}), {1.0, 4.0});
    const auto img = map_trajectory(traj, r.map, MapDirection::DampedToTimeDep);
    for (double t : traj.sample_times(30)) {
        EXPECT_NEAR(img.position(t)(0), traj.position(t)(0), 1e-9);
        EXPECT_NEAR(img.velocity(t)(0), traj.velocity(t)(0), 1e-8);
    }
}

TEST(MapTrajectory, ConstantCurveStaysConstant) {
    const auto r = damped_to_timedep(DampingProfile::constant(-0.5), Interval::closed(2, 10));
    const std::vector<double> t{2, 4, 6, 8, 10};
    const std::vector<Vec> x(5, vec({1.5})), v(5, vec({0.0}));
    const auto img = map_trajectory(Trajectory(t, x, v), r.map, MapDirection::DampedToTimeDep);
    for (double s : img.sample_times(20)) {
        EXPECT_NEAR(img.position(s)(0), 1.5, 1e-12);
        EXPECT_NEAR(img.velocity(s)(0), 0.0, 1e-12);
    }
}

TEST(MapTrajectory, DampedSolutionSolvesEulerEquation) {
    // x'' − x'/2 + x = 0 on [2, 10] becomes s² y'' + 4 y = 0 with s = 2 e^{(t−2)/2}.
    const auto fwd = damped_to_timedep(DampingProfile::constant(-0.5), Interval::closed(2, 10));
    const auto damped = integrate_damped(MetricSpace::euclidean(1), ScalarField::quadratic(),
                                         DampingProfile::constant(-0.5), vec({1}), vec({0.5}), {2.0, 10.0}, 1e-11);
    const DampedOscillator ref{0.5, 2.0, 1.0, 0.5};
    for (double t : damped.sample_times(50)) EXPECT_NEAR(damped.position(t)(0), ref.position(t), 1e-7);

    const auto img = map_trajectory(damped, fwd.map, MapDirection::DampedToTimeDep);
    // ds/dt = 1 at t = 2. In u = s/2 the Euler equation is unchanged and y'(u=1) = 2 y'(s=2).
    const EulerOscillator euler{2.0, 1.0, 1.0};
    for (double s : img.sample_times(50))
        EXPECT_NEAR(img.position(s)(0), euler.position(s / 2), 1e-6 * (1 + std::abs(euler.position(s / 2))));
}

// Properties.

TEST(ReparamProperty, DampingRoundTrip) {
    for (const auto& phi : {DampingProfile::constant(-0.5), DampingProfile::constant(0.3), DampingProfile::power_law(2),
                            DampingProfile::power_law(-1), DampingProfile::tabulated({1, 2, 3, 4}, {0.1, 0.2, 0.5, 0.6})})
        EXPECT_LT(damping_round_trip_residual(phi, Interval::closed(1, 4)), 1e-8) << phi.name();
}

TEST(ReparamProperty, OmegaRoundTrip) {
    for (const auto& w : {OmegaProfile::power_law(1), OmegaProfile::power_law(-2), OmegaProfile::inverse_square_scaled(2),
                          OmegaProfile::inverse_square_affine(1, 1)})
        EXPECT_LT(omega_round_trip_residual(w, Interval::closed(1, 4)), 1e-8) << w.name();
}

TEST(ReparamProperty, MapIsInvertibleAndIncreasing) {
    for (const auto& phi : {DampingProfile::constant(-0.5), DampingProfile::power_law(2), DampingProfile::constant(1)}) {
        const auto r = damped_to_timedep(phi, Interval::closed(1, 6));
        double prev = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 100; ++k) {
            const double t = 1 + 5 * k / 100.0;
            const double s = r.map.forward(t);
            EXPECT_GT(s, prev);
            prev = s;
            EXPECT_NEAR(r.map.inverse(s), t, 1e-10 * std::max(1.0, t));
            EXPECT_GT(r.omega.eval(s), 0.0);
        }
    }
}

TEST(ReparamProperty, ImageSatisfiesUndampedEquation) {
    // y'' + ω(s) y = 0 checked with the image's own derivatives at 200 points.
    const auto phi = DampingProfile::power_law(1);
    const auto fwd = damped_to_timedep(phi, Interval::closed(1, 5));
    const auto damped = integrate_damped(MetricSpace::euclidean(1), ScalarField::quadratic(), phi, vec({0.4}),
                                         vec({1.0}), {1.0, 5.0}, 1e-11);
    const auto img = map_trajectory(damped, fwd.map, MapDirection::DampedToTimeDep);
    double worst = 0.0;
    for (double s : img.sample_times(200)) {
        const double res = img.acceleration(s)(0) + fwd.omega.eval(s) * img.position(s)(0);
        worst = std::max(worst, std::abs(res));
    }
    EXPECT_LT(worst, 1e-5);
}
