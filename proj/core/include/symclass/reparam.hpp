#pragma once

#include "symclass/omega_profile.hpp"
#include "symclass/trajectory.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace symclass {

enum class DampingFamily { Constant, PowerLaw, Tabulated, Mapped };
std::string to_string(DampingFamily f);

// Linear damping coefficient φ(t) in  ẍ + Γẋẋ + φ(t) ẋ + V' = 0.
class DampingProfile {
public:
    using Fn = std::function<double(double)>;

    static DampingProfile constant(double c);
    // b / t on (0, inf)
    static DampingProfile power_law(double b);
    // Shape-preserving cubic through (t_k, φ_k).
    static DampingProfile tabulated(std::vector<double> t, std::vector<double> phi);
    static DampingProfile mapped(Fn value, Interval validity, std::string description);

    DampingFamily family() const noexcept { return family_; }
    const std::vector<double>& parameters() const noexcept { return params_; }
    const Interval& validity() const noexcept { return validity_; }
    std::string name() const;

    double eval(double t) const;
    double operator()(double t) const { return eval(t); }

private:
    DampingProfile() = default;

    DampingFamily family_ = DampingFamily::Constant;
    std::vector<double> params_;
    Interval validity_;
    std::shared_ptr<const MonotoneCubic> table_;
    Fn value_;
    std::string description_;
};

// Strictly increasing map s = S(t) between the damped time t and the time s of
// the undamped time-dependent system.
class TimeMap {
public:
    using Fn = std::function<double(double)>;

    // inverse may be empty, in which case it is found by bisection.
    TimeMap(Fn forward, Fn derivative, Fn second_derivative, Interval t_domain, Fn inverse = {});

    double forward(double t) const;
    double derivative(double t) const;
    double second_derivative(double t) const;
    double inverse(double s) const;
    double operator()(double t) const { return forward(t); }

    const Interval& t_domain() const noexcept { return t_domain_; }
    const Interval& s_domain() const noexcept { return s_domain_; }
    bool increasing() const noexcept { return true; }

private:
    Fn S_, dS_, d2S_, inv_;
    Interval t_domain_, s_domain_;
};

struct DampedToTimeDep {
    TimeMap map;
    OmegaProfile omega;
};

struct TimeDepToDamped {
    TimeMap map;
    DampingProfile damping;
};

// S(t) = t0 + ∫_{t0}^{t} e^{−Φ},  Φ(t) = ∫_{t0}^{t} φ,  t0 the left end of the interval;
// ω(s) = e^{2Φ(S⁻¹(s))}.
DampedToTimeDep damped_to_timedep(const DampingProfile& phi, const Interval& t_interval);

// t(s) = s0 + ∫_{s0}^{s} √ω,  s0 the left end of the interval;
// φ(t) = ω,s / (2 ω^{3/2}) evaluated at s = S(t). Throws NegativeOmega if ω ≤ 0 on the interval.
TimeDepToDamped timedep_to_damped(const OmegaProfile& omega, const Interval& s_interval);

enum class MapDirection {
    // Trajectory in damped time t to trajectory in s.
    DampedToTimeDep,
    // Trajectory in s to trajectory in damped time t.
    TimeDepToDamped
};

// Reparametrizes positions and rescales velocities by the chain rule.
Trajectory map_trajectory(const Trajectory& traj, const TimeMap& map, MapDirection direction);

// sup |φ̂ − φ| over a uniform grid for φ → ω → φ̂.
double damping_round_trip_residual(const DampingProfile& phi, const Interval& t_interval, std::size_t samples = 200);

// sup |ω̂(s0 + c (s − s0)) ω(s0) / ω(s) − 1| with c = √ω(s0) for ω → φ → ω̂.
double omega_round_trip_residual(const OmegaProfile& omega, const Interval& s_interval, std::size_t samples = 200);

}  // namespace symclass
