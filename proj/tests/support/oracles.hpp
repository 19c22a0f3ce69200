#pragma once

// Independent reference values used by the unit and acceptance tests.

#include "symclass/linalg.hpp"
#include "symclass/point_symmetry.hpp"

#include <cmath>
#include <string>

namespace symclass::testing {

#ifdef SYMCLASS_FIXTURE_DIR
inline std::string fixture(const std::string& name) { return std::string(SYMCLASS_FIXTURE_DIR) + "/" + name; }
#endif

// t² x'' + γ² x = 0 with x(1) = x0, x'(1) = v0 (γ > 1/2):
// x = √t (c1 cos(β ln t) + c2 sin(β ln t)), β = √(γ² − 1/4).
struct EulerOscillator {
    double gamma, x0, v0;

    double beta() const { return std::sqrt(gamma * gamma - 0.25); }
    double position(double t) const {
        const double b = beta(), c1 = x0, c2 = (v0 - 0.5 * x0) / b, L = std::log(t);
        return std::sqrt(t) * (c1 * std::cos(b * L) + c2 * std::sin(b * L));
    }
};

// x'' − c x' + x = 0 (c = 1/γ) with x(t0) = x0, x'(t0) = v0; underdamped for |c| < 2.
struct DampedOscillator {
    double c, t0, x0, v0;

    double position(double t) const {
        const double a = 0.5 * c, w = std::sqrt(1.0 - a * a), s = t - t0;
        const double A = x0, B = (v0 - a * x0) / w;
        return std::exp(a * s) * (A * std::cos(w * s) + B * std::sin(w * s));
    }
};

// Generator c1 ξ(t) ∂t + c2 Y with constant coefficients.
inline PointSymmetry make_generator(std::size_t dim, std::vector<double> xi_poly,
                                    std::function<Vec(const Vec&)> field, double scale, std::string label) {
    std::vector<ScalarTerm> xi;
    if (!xi_poly.empty()) xi.push_back({TimeFunction::polynomial(std::move(xi_poly)), {}, "1"});
    std::vector<VectorTerm> eta;
    if (field) eta.push_back({TimeFunction::constant(scale), std::move(field), label});
    return PointSymmetry(dim, std::move(xi), std::move(eta), "test");
}

inline Vec vec(std::initializer_list<double> v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

}  // namespace symclass::testing
