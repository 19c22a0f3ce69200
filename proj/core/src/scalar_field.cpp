#include "symclass/scalar_field.hpp"

#include "symclass/errors.hpp"

#include <cmath>
#include <sstream>

namespace symclass {

std::string to_string(PotentialFamily f) {
    switch (f) {
        case PotentialFamily::CentralPower: return "CentralPower";
        case PotentialFamily::Kepler: return "Kepler";
        case PotentialFamily::Exceptional: return "Exceptional";
        case PotentialFamily::Quadratic: return "Quadratic";
        case PotentialFamily::PolynomialGeneric: return "PolynomialGeneric";
    }
    return "?";
}

ScalarField ScalarField::central_power(double n_exp) {
    if (n_exp == 0.0 || !std::isfinite(n_exp))
        throw InvalidArgument("CentralPower exponent must be finite and nonzero");
    return ScalarField(PotentialFamily::CentralPower, n_exp);
}

ScalarField ScalarField::kepler() { return ScalarField(PotentialFamily::Kepler, -1.0); }
ScalarField ScalarField::exceptional() { return ScalarField(PotentialFamily::Exceptional, -2.0); }
ScalarField ScalarField::quadratic() { return ScalarField(PotentialFamily::Quadratic, 2.0); }

ScalarField ScalarField::polynomial(Polynomial p) {
    if (p.dimension() == 0) throw InvalidArgument("polynomial potential needs a dimension");
    ScalarField f(PotentialFamily::PolynomialGeneric, 0.0);
    const std::size_t n = p.dimension();
    f.poly_grad_.reserve(n);
    f.poly_hess_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        f.poly_grad_.push_back(p.derivative(i));
        for (std::size_t j = 0; j < n; ++j) f.poly_hess_[i].push_back(f.poly_grad_[i].derivative(j));
    }
    f.poly_ = std::move(p);
    return f;
}

std::optional<double> ScalarField::radial_exponent() const {
    if (family_ == PotentialFamily::PolynomialGeneric) return std::nullopt;
    return n_;
}

bool ScalarField::is_singular() const noexcept {
    switch (family_) {
        case PotentialFamily::Kepler:
        case PotentialFamily::Exceptional: return true;
        // r^(n-2) in the gradient is not evaluable at r = 0 unless n = 2
        case PotentialFamily::CentralPower: return n_ != 2.0;
        default: return false;
    }
}

ScalarField ScalarField::with_min_radius(double r_min) const {
    if (!(r_min > 0.0)) throw InvalidArgument("minimum radius must be positive");
    ScalarField copy = *this;
    copy.r_min_ = r_min;
    return copy;
}

void ScalarField::guard(const Vec& x) const {
    if (family_ == PotentialFamily::PolynomialGeneric) {
        if (static_cast<std::size_t>(x.size()) != poly_.dimension())
            throw InvalidArgument("point dimension does not match polynomial potential");
        return;
    }
    if (is_singular() && x.norm() < r_min_) {
        std::ostringstream os;
        os << name() << " is singular at r = " << x.norm();
        throw SingularPoint(os.str());
    }
}

double ScalarField::eval(const Vec& x) const {
    guard(x);
    const double r = x.norm();
    switch (family_) {
        case PotentialFamily::CentralPower: return n_ == 1.0 ? r : std::pow(r, n_) / n_;
        case PotentialFamily::Kepler: return -1.0 / r;
        case PotentialFamily::Exceptional: return -0.5 / (r * r);
        case PotentialFamily::Quadratic: return 0.5 * x.squaredNorm();
        case PotentialFamily::PolynomialGeneric: return poly_(x);
    }
    return 0.0;
}

Vec ScalarField::grad(const Vec& x) const {
    guard(x);
    if (family_ == PotentialFamily::PolynomialGeneric) {
        Vec g(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) g(i) = poly_grad_[static_cast<std::size_t>(i)](x);
        return g;
    }
    if (family_ == PotentialFamily::Quadratic) return x;
    const double r = x.norm();
    // d/dx_i r^n/n = r^(n-2) x_i, same formula for all central families
    return std::pow(r, n_ - 2.0) * x;
}

Mat ScalarField::hessian(const Vec& x) const {
    guard(x);
    const Eigen::Index n = x.size();
    if (family_ == PotentialFamily::PolynomialGeneric) {
        Mat h(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                h(i, j) = poly_hess_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](x);
        return h;
    }
    if (family_ == PotentialFamily::Quadratic) return Mat::Identity(n, n);
    const double r = x.norm();
    return std::pow(r, n_ - 2.0) * Mat::Identity(n, n) + (n_ - 2.0) * std::pow(r, n_ - 4.0) * x * x.transpose();
}

std::string ScalarField::name() const {
    std::ostringstream os;
    switch (family_) {
        case PotentialFamily::CentralPower: os << "CentralPower(n=" << n_ << ")"; break;
        case PotentialFamily::PolynomialGeneric: os << "Polynomial(" << poly_.to_string() << ")"; break;
        default: os << to_string(family_);
    }
    return os.str();
}

Vec fd_grad(const ScalarField& field, const Vec& x, double h) {
    Vec g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Vec xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        g(i) = (field.eval(xp) - field.eval(xm)) / (2.0 * h);
    }
    return g;
}

}  // namespace symclass
