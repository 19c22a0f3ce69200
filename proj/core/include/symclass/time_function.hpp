#pragma once

#include "symclass/linalg.hpp"
#include "symclass/ode.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace symclass {

// Coefficient function of time (D, T, C, K, ...): closed-form polynomial,
// a linear functional of a dense ODE solution, or an opaque evaluator.
class TimeFunction {
public:
    enum class Kind { Polynomial, Dense, Evaluator };
    using Fn = std::function<double(double)>;

    TimeFunction() : TimeFunction(constant(0.0)) {}

    static TimeFunction constant(double c);
    // Σ c_k t^k
    static TimeFunction polynomial(std::vector<double> coeffs);
    // weights · y(t) and weights · y'(t)
    static TimeFunction dense(std::shared_ptr<const ode::DenseSolution> sol, Vec weights, std::string label);
    static TimeFunction evaluator(Fn value, Fn derivative, std::string description);

    Kind kind() const noexcept { return kind_; }
    bool is_closed_form() const noexcept { return kind_ != Kind::Dense; }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }

    double operator()(double t) const;
    double derivative(double t) const;
    TimeFunction scaled(double s) const;
    // Exact for polynomials; dense output/derivative evaluator otherwise.
    TimeFunction derivative_function() const;

    bool is_zero() const;
    // Max |f| over [a, b] on a uniform probe grid.
    double max_abs_on(double a, double b, int probes = 64) const;

    std::string describe() const;
    // Domain of the dense solution, whole line otherwise.
    double t_front() const;
    double t_back() const;

private:
    explicit TimeFunction(Kind k) : kind_(k) {}

    Kind kind_ = Kind::Polynomial;
    std::vector<double> coeffs_;
    std::shared_ptr<const ode::DenseSolution> sol_;
    Vec weights_;
    Fn value_, deriv_;
    std::string label_;
};

// Coefficients of p(t - t0) = Σ c_k (t - t0)^k rewritten as powers of t.
std::vector<double> shift_polynomial(const std::vector<double>& c, double t0);

}  // namespace symclass
