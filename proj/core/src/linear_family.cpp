#include "symclass/linear_family.hpp"

#include "symclass/errors.hpp"

#include <cmath>

namespace symclass {

SolutionFamily SolutionFamily::integrate(const LinearSystem& sys, double t0, double t_lo, double t_hi,
                                         const ode::Options& opt) {
    const auto n = static_cast<Eigen::Index>(sys.dim);
    SolutionFamily f;
    f.dim_ = sys.dim;
    f.params_ = sys.dim;
    f.t0_ = t0;
    auto rhs = [&sys, n](double t, const Vec& y, Vec& dy) {
        const Eigen::Map<const Mat> Phi(y.data(), n, n);
        Eigen::Map<Mat> dPhi(dy.data(), n, n);
        dPhi = sys.matrix(t) * Phi;
    };
    Mat I = Mat::Identity(n, n);
    const Vec y0 = Eigen::Map<const Vec>(I.data(), n * n);
    try {
        f.sol_ = std::make_shared<const ode::DenseSolution>(ode::solve_two_sided(rhs, t0, y0, t_lo, t_hi, opt));
    } catch (const StepFailure& e) {
        throw OdeSolveFailure(std::string("coefficient ODE failed: ") + e.what());
    } catch (const OutOfDomain& e) {
        throw OdeSolveFailure(std::string("coefficient ODE left the domain: ") + e.what());
    }
    return f;
}

SolutionFamily SolutionFamily::polynomial(std::vector<Mat> coeffs, double t0) {
    if (coeffs.empty()) throw InvalidArgument("polynomial family needs coefficients");
    SolutionFamily f;
    f.dim_ = static_cast<std::size_t>(coeffs.front().rows());
    f.params_ = static_cast<std::size_t>(coeffs.front().cols());
    f.t0_ = t0;
    f.coeffs_ = std::move(coeffs);
    return f;
}

Mat SolutionFamily::at(double t) const {
    if (is_polynomial()) {
        Mat out = Mat::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(params_));
        double p = 1.0;
        for (const Mat& C : coeffs_) {
            out += p * C;
            p *= (t - t0_);
        }
        return out;
    }
    const Vec y = (*sol_)(t);
    return Eigen::Map<const Mat>(y.data(), static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(params_));
}

TimeFunction SolutionFamily::component(std::size_t comp, const Vec& p, const std::string& label) const {
    if (is_polynomial()) {
        std::vector<double> c;
        for (const Mat& C : coeffs_) c.push_back(C.row(static_cast<Eigen::Index>(comp)).dot(p));
        return TimeFunction::polynomial(shift_polynomial(c, t0_));
    }
    Vec w = Vec::Zero(static_cast<Eigen::Index>(dim_ * params_));
    for (std::size_t k = 0; k < params_; ++k) w(static_cast<Eigen::Index>(comp + k * dim_)) = p(static_cast<Eigen::Index>(k));
    return TimeFunction::dense(sol_, w, label);
}

Mat constrained_parameters(const SolutionFamily& family, const std::vector<StateConstraint>& constraints,
                           const std::vector<double>& times, double rel_tol) {
    const auto np = static_cast<Eigen::Index>(family.params());
    if (constraints.empty()) return Mat::Identity(np, np);
    Mat rows(static_cast<Eigen::Index>(constraints.size() * times.size()), np);
    Eigen::Index r = 0;
    for (double t : times) {
        const Mat Phi = family.at(t);
        for (const auto& c : constraints) rows.row(r++) = c(t).transpose() * Phi;
    }
    return canonical_basis(null_space(normalize_rows(rows), rel_tol));
}

}  // namespace symclass
