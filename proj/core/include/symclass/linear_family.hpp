#pragma once

#include "symclass/linalg.hpp"
#include "symclass/ode.hpp"
#include "symclass/time_function.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace symclass {

// y' = A(t) y
struct LinearSystem {
    std::size_t dim = 0;
    std::function<Mat(double)> matrix;
};

// All solutions y(t) = Φ(t) p of a linear system, p = y(t0).
class SolutionFamily {
public:
    // Fundamental matrix integrated numerically over [t_lo, t_hi].
    static SolutionFamily integrate(const LinearSystem& sys, double t0, double t_lo, double t_hi,
                                    const ode::Options& opt);
    // Φ(t) = Σ_k C_k (t - t0)^k, exact.
    static SolutionFamily polynomial(std::vector<Mat> coeffs, double t0);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t params() const noexcept { return params_; }
    bool is_polynomial() const noexcept { return !coeffs_.empty(); }
    double t0() const noexcept { return t0_; }

    Mat at(double t) const;
    // Component `comp` of Φ(t) p.
    TimeFunction component(std::size_t comp, const Vec& p, const std::string& label) const;

private:
    SolutionFamily() = default;

    std::size_t dim_ = 0;
    std::size_t params_ = 0;
    double t0_ = 1.0;
    std::vector<Mat> coeffs_;
    std::shared_ptr<const ode::DenseSolution> sol_;
};

// Linear constraint c(t)·y(t) = 0 on the state.
using StateConstraint = std::function<Vec(double)>;

// Parameter vectors p (canonical basis, columns) such that every constraint
// vanishes at every sample time.
Mat constrained_parameters(const SolutionFamily& family, const std::vector<StateConstraint>& constraints,
                           const std::vector<double>& times, double rel_tol);

}  // namespace symclass
