#pragma once

#include "symclass/collineation.hpp"
#include "symclass/metric_space.hpp"
#include "symclass/omega_profile.hpp"
#include "symclass/ode.hpp"
#include "symclass/point_symmetry.hpp"
#include "symclass/sampling.hpp"
#include "symclass/scalar_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace symclass {

struct ClassifierSettings {
    // Window on which numeric coefficient functions are available.
    double t_lo = 0.25;
    double t_hi = 16.0;
    // Seed time for numeric coefficient ODEs.
    double t0 = 1.0;
    std::size_t spatial_samples = 60;
    std::size_t time_samples = 48;
    std::uint64_t seed = default_seed;
    double feasibility_tol = 1e-8;
    double rank_tol = 1e-8;
    // Null-space thresholds for exactly evaluated rows and for rows built from ODE solutions.
    double exact_null_tol = 1e-9;
    double numeric_null_tol = 1e-7;
    ode::Options ode{};
};

struct Rejection {
    std::string case_tag;
    std::string generator;
    std::string reason;
};

// Result of a single theorem case.
struct CaseOutcome {
    std::vector<PointSymmetry> symmetries;
    std::vector<Rejection> rejected;
    // Set when the case does not apply to the input at all.
    std::optional<std::string> inapplicable;
};

// Shared, precomputed view of a problem instance.
class ProblemContext {
public:
    ProblemContext(const MetricSpace& space, const ScalarField& V, const OmegaProfile& omega,
                   const std::vector<Collineation>& catalog, const ClassifierSettings& settings);

    const MetricSpace& space() const noexcept { return *space_; }
    const ScalarField& potential() const noexcept { return *V_; }
    const OmegaProfile& omega() const noexcept { return *omega_; }
    // Catalog reduced to a linearly independent subset (first occurrence wins).
    const std::vector<Collineation>& catalog() const noexcept { return catalog_; }
    const ClassifierSettings& settings() const noexcept { return settings_; }

    const std::vector<Vec>& points() const noexcept { return points_; }
    const std::vector<double>& times() const noexcept { return times_; }
    double window_lo() const noexcept { return lo_; }
    double window_hi() const noexcept { return hi_; }
    double t0() const noexcept { return t0_; }
    std::size_t dimension() const noexcept { return space_->dimension(); }

    // V'^i at sample point p
    const Vec& raised_gradient_at(std::size_t p) const { return vprime_[p]; }
    // (L_Y V')^i = Y^j ∂_j V'^i − V'^j ∂_j Y^i at sample point p
    Vec bracket_with_gradient(const Collineation& Y, std::size_t p) const;

    // Points acceptable for sampling: in chart and away from singularities.
    bool admissible(const Vec& x) const;

private:
    const MetricSpace* space_;
    const ScalarField* V_;
    const OmegaProfile* omega_;
    std::vector<Collineation> catalog_;
    ClassifierSettings settings_;
    std::vector<Vec> points_;
    std::vector<Vec> vprime_;
    std::vector<Mat> vprime_jac_;
    std::vector<double> times_;
    double lo_ = 0.0, hi_ = 0.0, t0_ = 1.0;
};

// Throws UnsupportedOmega when ω is constant on the coefficient window.
void require_nonconstant_omega(const ProblemContext& ctx);

std::vector<std::pair<double, Vec>> rank_points(const ProblemContext& ctx, std::size_t count);

}  // namespace symclass
