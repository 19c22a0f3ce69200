#include "symclass/collineation.hpp"

#include "symclass/errors.hpp"

#include <cmath>
#include <sstream>

namespace symclass {

std::string to_string(CollineationClass c) {
    switch (c) {
        case CollineationClass::GradientKV: return "GradientKV";
        case CollineationClass::NongradientKV: return "NongradientKV";
        case CollineationClass::GradientHV: return "GradientHV";
        case CollineationClass::AffineCollineation: return "AffineCollineation";
        case CollineationClass::SpecialPC: return "SpecialPC";
    }
    return "?";
}

Collineation::Collineation(std::string label, CollineationClass cls, std::vector<Polynomial> components, double psi,
                           std::optional<Polynomial> potential, std::optional<Polynomial> projective_factor)
    : label_(std::move(label)),
      cls_(cls),
      components_(std::move(components)),
      psi_(psi),
      potential_(std::move(potential)),
      factor_(std::move(projective_factor)) {
    const std::size_t n = components_.size();
    if (n == 0) throw InvalidArgument("collineation needs components");
    for (const auto& c : components_)
        if (c.dimension() != n) throw InvalidArgument("collineation component dimension mismatch");
    if ((cls_ == CollineationClass::GradientKV || cls_ == CollineationClass::GradientHV) && !potential_)
        throw InvalidArgument("gradient collineation " + label_ + " needs a generating potential");
    if (cls_ == CollineationClass::SpecialPC && !factor_)
        throw InvalidArgument("special projective collineation " + label_ + " needs its factor");
    if (cls_ == CollineationClass::GradientHV && psi_ == 0.0)
        throw InvalidArgument("homothetic vector " + label_ + " needs psi != 0");
    if ((cls_ == CollineationClass::GradientKV || cls_ == CollineationClass::NongradientKV) && psi_ != 0.0)
        throw InvalidArgument("Killing vector " + label_ + " must have psi = 0");
    d1_.assign(n, {});
    d2_.assign(n, std::vector<std::vector<Polynomial>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            d1_[i].push_back(components_[i].derivative(j));
            for (std::size_t k = 0; k < n; ++k) d2_[i][j].push_back(d1_[i][j].derivative(k));
        }
}

bool Collineation::is_gradient() const noexcept {
    return cls_ == CollineationClass::GradientKV || cls_ == CollineationClass::GradientHV;
}

bool Collineation::is_killing() const noexcept {
    return cls_ == CollineationClass::GradientKV || cls_ == CollineationClass::NongradientKV;
}

bool Collineation::is_affine() const noexcept { return cls_ != CollineationClass::SpecialPC; }

Vec Collineation::value(const Vec& x) const {
    Vec y(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) y(i) = components_[static_cast<std::size_t>(i)](x);
    return y;
}

Mat Collineation::jacobian(const Vec& x) const {
    const auto n = x.size();
    Mat J(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) J(i, j) = d1_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](x);
    return J;
}

Tensor3 Collineation::hessian(const Vec& x) const {
    const std::size_t n = dimension();
    Tensor3 H(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) H(i, j, k) = d2_[i][j][k](x);
    return H;
}

double Collineation::potential_value(const Vec& x) const {
    if (!potential_) throw InvalidArgument(label_ + " has no generating potential");
    return (*potential_)(x);
}

std::string Collineation::describe() const {
    std::ostringstream os;
    os << label_ << " = (";
    for (std::size_t i = 0; i < components_.size(); ++i) os << (i ? ", " : "") << components_[i].to_string();
    os << ")  [" << to_string(cls_);
    if (psi_ != 0.0) os << ", psi=" << psi_;
    if (potential_) os << ", S=" << potential_->to_string();
    os << "]";
    return os.str();
}

std::vector<Collineation> euclidean_catalog(std::size_t n, CatalogScope scope) {
    if (n == 0) throw InvalidArgument("dimension must be >= 1");
    std::vector<Collineation> out;
    const auto x = [n](std::size_t i) { return Polynomial::variable(n, i); };
    const auto zero = [n] { return Polynomial(n); };
    const auto idx = [](std::size_t i) { return std::to_string(i + 1); };

    for (std::size_t I = 0; I < n; ++I) {
        std::vector<Polynomial> c(n, zero());
        c[I] = Polynomial::constant(n, 1.0);
        out.emplace_back("S_" + idx(I), CollineationClass::GradientKV, std::move(c), 0.0, x(I));
    }
    for (std::size_t I = 0; I < n; ++I)
        for (std::size_t J = I + 1; J < n; ++J) {
            std::vector<Polynomial> c(n, zero());
            c[J] = x(I);
            c[I] = -x(J);
            out.emplace_back("X_" + idx(I) + idx(J), CollineationClass::NongradientKV, std::move(c));
        }
    {
        std::vector<Polynomial> c;
        Polynomial r2(n);
        for (std::size_t i = 0; i < n; ++i) {
            c.push_back(x(i));
            r2 = r2 + x(i) * x(i);
        }
        out.emplace_back("H", CollineationClass::GradientHV, std::move(c), 1.0, r2 * 0.5);
    }
    for (std::size_t I = 0; I < n; ++I) {
        std::vector<Polynomial> c(n, zero());
        c[I] = x(I);
        out.emplace_back("A_" + idx(I), CollineationClass::AffineCollineation, std::move(c));
    }
    if (scope == CatalogScope::Full) {
        for (std::size_t I = 0; I < n; ++I)
            for (std::size_t J = I + 1; J < n; ++J) {
                std::vector<Polynomial> c(n, zero());
                c[I] = x(J);
                c[J] = x(I);
                out.emplace_back("B_" + idx(I) + idx(J), CollineationClass::AffineCollineation, std::move(c));
            }
    }
    for (std::size_t I = 0; I < n; ++I) {
        std::vector<Polynomial> c;
        for (std::size_t i = 0; i < n; ++i) c.push_back(x(I) * x(i));
        out.emplace_back("P_" + idx(I), CollineationClass::SpecialPC, std::move(c), 0.0, std::nullopt, x(I));
    }
    return out;
}

Mat lie_derivative_metric(const Collineation& Y, const MetricSpace& space, const Vec& x) {
    const Mat g = space.metric(x);
    const Mat J = Y.jacobian(x);
    Mat L = g * J + J.transpose() * g;
    if (!space.is_euclidean()) {
        const Vec y = Y.value(x);
        const Tensor3 dg = space.metric_derivative(x);
        const std::size_t n = space.dimension();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += y(static_cast<Eigen::Index>(k)) * dg(i, j, k);
                L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += s;
            }
    }
    return L;
}

Tensor3 lie_derivative_connection(const Collineation& Y, const MetricSpace& space, const Vec& x) {
    const std::size_t n = space.dimension();
    Tensor3 L = Y.hessian(x);
    if (space.is_euclidean()) return L;
    const Vec y = Y.value(x);
    const Mat J = Y.jacobian(x);
    const Tensor3 G = space.christoffel(x);
    const Tensor4 dG = space.christoffel_derivative(x);
    const auto e = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                double s = 0.0;
                for (std::size_t l = 0; l < n; ++l) {
                    s += y(e(l)) * dG(i, j, k, l);
                    s -= G(l, j, k) * J(e(i), e(l));
                    s += G(i, l, k) * J(e(l), e(j));
                    s += G(i, j, l) * J(e(l), e(k));
                }
                L(i, j, k) += s;
            }
    return L;
}

double collineation_residual(const Collineation& Y, const MetricSpace& space, const Vec& x) {
    const std::size_t n = space.dimension();
    if (Y.dimension() != n) throw InvalidArgument("collineation dimension does not match space");
    double r = 0.0;
    switch (Y.cls()) {
        case CollineationClass::GradientKV:
        case CollineationClass::NongradientKV:
        case CollineationClass::GradientHV: {
            const Mat L = lie_derivative_metric(Y, space, x);
            r = (L - 2.0 * Y.psi() * space.metric(x)).cwiseAbs().maxCoeff();
            break;
        }
        case CollineationClass::AffineCollineation: r = lie_derivative_connection(Y, space, x).max_abs(); break;
        case CollineationClass::SpecialPC: {
            Tensor3 L = lie_derivative_connection(Y, space, x);
            const Polynomial& phi = *Y.projective_factor();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        double expect = 0.0;
                        if (i == j) expect += phi.derivative(k)(x);
                        if (i == k) expect += phi.derivative(j)(x);
                        L(i, j, k) -= expect;
                    }
            r = L.max_abs();
            break;
        }
    }
    if (Y.is_gradient()) {
        Vec dS(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k) dS(static_cast<Eigen::Index>(k)) = Y.potential()->derivative(k)(x);
        const Vec raised = space.inverse_metric(x) * dS;
        r = std::max(r, (raised - Y.value(x)).cwiseAbs().maxCoeff());
    }
    return r;
}

CatalogCheck verify_catalog(const std::vector<Collineation>& catalog, const MetricSpace& space,
                            const std::vector<Vec>& points, double tol) {
    CatalogCheck out;
    for (const auto& Y : catalog) {
        double worst = 0.0;
        for (const auto& x : points) worst = std::max(worst, collineation_residual(Y, space, x));
        if (worst <= tol)
            out.accepted.push_back(Y);
        else
            out.rejected.emplace_back(Y.label(), worst);
    }
    return out;
}

}  // namespace symclass
