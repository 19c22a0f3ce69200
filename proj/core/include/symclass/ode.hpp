#pragma once

#include "symclass/linalg.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace symclass::ode {

// y' = f(t, y), written into dydt (pre-sized).
using Rhs = std::function<void(double t, const Vec& y, Vec& dydt)>;

struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 picks a step automatically
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 1'000'000;
    // Called after every accepted step; may throw to abort the integration.
    std::function<void(double t, const Vec& y)> guard;
};

// Piecewise Hermite interpolant through accepted steps: quintic when node
// second derivatives are available, cubic otherwise. Nodes are stored in
// increasing time order regardless of integration direction.
class DenseSolution {
public:
    DenseSolution() = default;
    DenseSolution(std::vector<double> t, std::vector<Vec> y, std::vector<Vec> dy, std::vector<Vec> d2y = {});

    std::size_t dimension() const noexcept { return y_.empty() ? 0 : static_cast<std::size_t>(y_.front().size()); }
    std::size_t nodes() const noexcept { return t_.size(); }
    double t_front() const { return t_.front(); }
    double t_back() const { return t_.back(); }
    bool covers(double t) const { return !t_.empty() && t >= t_.front() && t <= t_.back(); }

    const std::vector<double>& times() const noexcept { return t_; }
    const std::vector<Vec>& states() const noexcept { return y_; }

    Vec operator()(double t) const;
    Vec derivative(double t) const;
    double component(double t, std::size_t i) const;
    // Σ_k w_k y_k(t) without forming the full state.
    double combination(double t, const Vec& weights) const;

    std::size_t rejected_steps = 0;

private:
    std::size_t segment(double t) const;

    std::vector<double> t_;
    std::vector<Vec> y_, dy_, d2y_;
};

// Dormand–Prince 5(4) with adaptive steps from t0 to t1 (either direction).
DenseSolution solve(const Rhs& f, double t0, const Vec& y0, double t1, const Options& opt = {});

// Integrates backward to t_lo and forward to t_hi from t0 and merges the two halves.
DenseSolution solve_two_sided(const Rhs& f, double t0, const Vec& y0, double t_lo, double t_hi,
                              const Options& opt = {});

}  // namespace symclass::ode
