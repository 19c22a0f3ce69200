#include "symclass/quadrature.hpp"

#include "symclass/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

namespace symclass {

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double error = 0.0;
    double value = 0.0;
    try {
        value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &error);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw QuadratureFailure(std::string("quadrature failed: ") + e.what());
    }
    // Allow some slack over the requested tolerance: the Kronrod estimate is pessimistic.
    if (!std::isfinite(value) || error > 1e3 * tol * std::max(1.0, std::abs(value))) {
        std::ostringstream os;
        os << "quadrature on [" << a << ", " << b << "] did not converge (error estimate " << error << ")";
        throw QuadratureFailure(os.str());
    }
    return value;
}

}  // namespace symclass
