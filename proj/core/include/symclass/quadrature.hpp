#pragma once

#include <functional>

namespace symclass {

// Adaptive Gauss–Kronrod (15/31) integral of f over [a, b]; b < a is allowed.
// Throws QuadratureFailure if the error estimate stays above tol * max(1, |result|).
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-11);

}  // namespace symclass
