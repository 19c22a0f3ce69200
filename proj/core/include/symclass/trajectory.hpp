#pragma once

#include "symclass/linalg.hpp"
#include "symclass/ode.hpp"

#include <iosfwd>
#include <memory>
#include <vector>

namespace symclass {

struct IntegrationInfo {
    double rtol = 0.0;
    double atol = 0.0;
    std::size_t steps = 0;
    std::size_t rejected_steps = 0;
};

// Curve t ↦ (x, ẋ) held as a dense solution of the state (x, ẋ).
class Trajectory {
public:
    Trajectory() = default;
    // State samples; when accelerations are omitted they are estimated from the velocities.
    Trajectory(std::vector<double> t, std::vector<Vec> x, std::vector<Vec> v, std::vector<Vec> a = {},
               IntegrationInfo info = {});
    // Wraps a solution of the first-order system y = (x, ẋ).
    Trajectory(std::shared_ptr<const ode::DenseSolution> sol, std::size_t dim, IntegrationInfo info = {});

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t nodes() const noexcept { return sol_ ? sol_->nodes() : 0; }
    double t_front() const { return sol_->t_front(); }
    double t_back() const { return sol_->t_back(); }
    const std::vector<double>& times() const { return sol_->times(); }
    bool covers(double t) const { return sol_ && sol_->covers(t); }
    const IntegrationInfo& info() const noexcept { return info_; }

    Vec position(double t) const;
    Vec velocity(double t) const;
    Vec acceleration(double t) const;

    // Uniform resampling with `count` points over [t_front, t_back].
    std::vector<double> sample_times(std::size_t count) const;

    // Columns t, x1..xn, v1..vn at the stored nodes.
    void write_csv(std::ostream& os) const;

private:
    std::shared_ptr<const ode::DenseSolution> sol_;
    std::size_t dim_ = 0;
    IntegrationInfo info_;
};

}  // namespace symclass
