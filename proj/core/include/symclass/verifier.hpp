#pragma once

#include "symclass/metric_space.hpp"
#include "symclass/noether_classifier.hpp"
#include "symclass/omega_profile.hpp"
#include "symclass/point_symmetry.hpp"
#include "symclass/reparam.hpp"
#include "symclass/sampling.hpp"
#include "symclass/scalar_field.hpp"
#include "symclass/trajectory.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symclass {

struct ResidualReport {
    double max = 0.0;
    double mean = 0.0;
    double p95 = 0.0;
    std::size_t samples = 0;
    double tolerance = 0.0;
    bool passed = true;
    // Worst residual of each named condition.
    std::map<std::string, double> components;

    static ResidualReport from_samples(const std::vector<double>& values, double tolerance);
};

struct VerifyOptions {
    std::size_t samples = 100;
    std::uint64_t seed = default_seed;
    double tolerance = 1e-6;
};

constexpr double singularity_radius = 1e-4;

// ẍ + Γẋẋ + ω(t) V' = 0 from (t0, x0, v0) to t1 > t0. rtol = tol, atol = tol / 100.
Trajectory integrate(const MetricSpace& space, const ScalarField& V, const OmegaProfile& omega, const Vec& x0,
                     const Vec& v0, std::pair<double, double> t_span, double tol = 1e-10);

// ẍ + Γẋẋ + φ(t) ẋ + V' = 0
Trajectory integrate_damped(const MetricSpace& space, const ScalarField& V, const DampingProfile& phi, const Vec& x0,
                            const Vec& v0, std::pair<double, double> t_span, double tol = 1e-10);

// Terminal state at tol against tol / 10; passes when the relative gap is below 10 tol.
ResidualReport check_convergence(const MetricSpace& space, const ScalarField& V, const OmegaProfile& omega,
                                 const Vec& x0, const Vec& v0, std::pair<double, double> t_span, double tol = 1e-10);

// Relative residuals of the four determining conditions at random (t, x).
ResidualReport check_determining_eqs(const PointSymmetry& sym, const MetricSpace& space, const ScalarField& V,
                                     const OmegaProfile& omega, const VerifyOptions& opt = {});

// X^[1]L + Dξ L − Df at random jets (t, x, ẋ).
ResidualReport check_noether_condition(const NoetherSymmetry& sym, const MetricSpace& space, const ScalarField& V,
                                       const OmegaProfile& omega, const VerifyOptions& opt = {});

// The velocity-split form: ξ,k = 0, L_η g = ξ,t g, η_i,t = f,i and the potential condition.
ResidualReport check_noether_split(const NoetherSymmetry& sym, const MetricSpace& space, const ScalarField& V,
                                   const OmegaProfile& omega, const VerifyOptions& opt = {});

// max |I(t) − I(t0)| / (1 + |I(t0)|) over the trajectory nodes.
ResidualReport check_integral_drift(const FirstIntegral& I, const Trajectory& traj, double tolerance = 1e-7);

using Invariant = std::function<double(double, const Vec&)>;

struct PushOptions {
    std::size_t samples = 400;
    double flow_tol = 1e-12;
    double eom_tol = 1e-6;
    Invariant invariant;
    double invariant_tol = 1e-8;
};

struct PushResult {
    Trajectory image;
    ResidualReport eom;
    std::optional<ResidualReport> invariant;
};

// Image of a solution under the flow exp(ε X), with its equation-of-motion residual.
PushResult push_solution(const PointSymmetry& sym, const Trajectory& traj, double eps, const MetricSpace& space,
                         const ScalarField& V, const OmegaProfile& omega, const PushOptions& opt = {});

// Numeric rank of (ξ, η) stacked over max(3 count, 30) jets.
std::size_t independence_rank(const std::vector<const PointSymmetry*>& syms, std::uint64_t seed = default_seed,
                              double rel_tol = 1e-8);
std::size_t independence_rank(const std::vector<PointSymmetry>& syms, std::uint64_t seed = default_seed,
                              double rel_tol = 1e-8);

}  // namespace symclass
