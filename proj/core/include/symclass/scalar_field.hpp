#pragma once

#include "symclass/linalg.hpp"
#include "symclass/polynomial.hpp"

#include <optional>
#include <string>

namespace symclass {

enum class PotentialFamily { CentralPower, Kepler, Exceptional, Quadratic, PolynomialGeneric };

std::string to_string(PotentialFamily f);

// Potential V(x) with analytic gradient and Hessian.
//   CentralPower(n): V = r^n / n      Kepler: V = -1/r
//   Exceptional:     V = -1/(2 r^2)   Quadratic: V = x.x / 2
class ScalarField {
public:
    static ScalarField central_power(double n_exp);
    static ScalarField kepler();
    static ScalarField exceptional();
    static ScalarField quadratic();
    static ScalarField polynomial(Polynomial p);

    PotentialFamily family() const noexcept { return family_; }
    // Radial exponent n with V ∝ r^n for the central families; nullopt otherwise.
    std::optional<double> radial_exponent() const;
    bool is_central() const noexcept { return family_ != PotentialFamily::PolynomialGeneric; }
    bool is_singular() const noexcept;
    double exponent() const noexcept { return n_; }
    const Polynomial* polynomial_form() const noexcept { return family_ == PotentialFamily::PolynomialGeneric ? &poly_ : nullptr; }

    // Points with r below this radius are rejected for singular families.
    double min_radius() const noexcept { return r_min_; }
    ScalarField with_min_radius(double r_min) const;

    double eval(const Vec& x) const;
    Vec grad(const Vec& x) const;
    Mat hessian(const Vec& x) const;

    std::string name() const;

private:
    ScalarField(PotentialFamily f, double n) : family_(f), n_(n) {}
    void guard(const Vec& x) const;

    PotentialFamily family_;
    double n_ = 0.0;  // radial exponent for central families
    Polynomial poly_;
    std::vector<Polynomial> poly_grad_;
    std::vector<std::vector<Polynomial>> poly_hess_;
    double r_min_ = 1e-8;
};

// Central-difference gradient, test oracle for ScalarField::grad.
Vec fd_grad(const ScalarField& field, const Vec& x, double h);

}  // namespace symclass
