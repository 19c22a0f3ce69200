#include "symclass/constraint_solve.hpp"

#include "symclass/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace symclass {

std::string to_string(ConditionForm f) {
    switch (f) {
        case ConditionForm::BracketGradient: return "L_Y V' + d0 V' + m Y = 0";
        case ConditionForm::BracketScaling: return "L_Y V' + d1 V' = 0";
        case ConditionForm::DirectionalScaling: return "V_,k Y^k + d V + c = 0";
        case ConditionForm::DirectionalGradient: return "V_,k Y^k + d V + m S + k = 0";
        case ConditionForm::Proportional: return "Y = k V'";
        case ConditionForm::ProjectiveFactor: return "S_,j V'^j - lambda1 S = 0";
    }
    return "?";
}

std::string to_string(ConstraintSolution::Status s) {
    switch (s) {
        case ConstraintSolution::Status::ExactClosedForm: return "ExactClosedForm";
        case ConstraintSolution::Status::NumericLeastSquares: return "NumericLeastSquares";
        case ConstraintSolution::Status::Infeasible: return "Infeasible";
    }
    return "?";
}

namespace {

std::vector<std::string> unknowns(ConditionForm f) {
    switch (f) {
        case ConditionForm::BracketGradient: return {"d0", "m"};
        case ConditionForm::BracketScaling: return {"d1"};
        case ConditionForm::DirectionalScaling: return {"d", "c"};
        case ConditionForm::DirectionalGradient: return {"d", "m", "k"};
        case ConditionForm::Proportional: return {"k"};
        case ConditionForm::ProjectiveFactor: return {"lambda1"};
    }
    return {};
}

bool is_homothety_vector(const Collineation& Y, const std::vector<Vec>& pts) {
    if (Y.cls() != CollineationClass::GradientHV) return false;
    for (const auto& x : pts)
        if ((Y.value(x) - Y.psi() * x).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + x.norm())) return false;
    return true;
}

bool is_rotation(const Collineation& Y, const std::vector<Vec>& pts) {
    if (Y.cls() != CollineationClass::NongradientKV) return false;
    for (const auto& x : pts) {
        const Mat J = Y.jacobian(x);
        if ((J + J.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
        if ((Y.value(x) - J * x).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + x.norm())) return false;
    }
    return true;
}

// Hand-derived constants for central potentials r^n against the homothety and rotations of E^n.
std::optional<std::map<std::string, double>> closed_form(const Collineation& Y, const ScalarField& V,
                                                         ConditionForm f, const MetricSpace& space,
                                                         const std::vector<Vec>& pts) {
    if (!space.is_euclidean() || !V.is_central()) return std::nullopt;
    const double n = *V.radial_exponent();
    if (is_rotation(Y, pts)) {
        switch (f) {
            case ConditionForm::BracketGradient: return std::map<std::string, double>{{"d0", 0.0}, {"m", 0.0}};
            case ConditionForm::BracketScaling: return std::map<std::string, double>{{"d1", 0.0}};
            case ConditionForm::DirectionalScaling: return std::map<std::string, double>{{"d", 0.0}, {"c", 0.0}};
            case ConditionForm::DirectionalGradient:
                return std::map<std::string, double>{{"d", 0.0}, {"m", 0.0}, {"k", 0.0}};
            default: return std::nullopt;
        }
    }
    if (is_homothety_vector(Y, pts) && Y.psi() == 1.0 && n != 2.0) {
        // L_H V' = (n−2) V',  x·∇V = n V
        switch (f) {
            case ConditionForm::BracketGradient: return std::map<std::string, double>{{"d0", 2.0 - n}, {"m", 0.0}};
            case ConditionForm::BracketScaling: return std::map<std::string, double>{{"d1", 2.0 - n}};
            case ConditionForm::DirectionalScaling: return std::map<std::string, double>{{"d", -n}, {"c", 0.0}};
            case ConditionForm::DirectionalGradient:
                return std::map<std::string, double>{{"d", -n}, {"m", 0.0}, {"k", 0.0}};
            default: return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace

ConstraintSolution potential_condition_solve(const Collineation& Y, const ScalarField& V, ConditionForm form,
                                             const MetricSpace& space, const std::vector<Vec>& points, double tol) {
    if (points.empty()) throw InvalidArgument("potential condition needs sample points");
    const auto names = unknowns(form);
    const auto nu = static_cast<Eigen::Index>(names.size());
    const auto n = static_cast<Eigen::Index>(space.dimension());
    const bool scalar = form == ConditionForm::DirectionalScaling || form == ConditionForm::DirectionalGradient ||
                        form == ConditionForm::ProjectiveFactor;
    const Eigen::Index per_point = scalar ? 1 : n;
    Mat A(static_cast<Eigen::Index>(points.size()) * per_point, nu);
    Vec b(A.rows());

    for (std::size_t p = 0; p < points.size(); ++p) {
        const Vec& x = points[p];
        const Eigen::Index r = static_cast<Eigen::Index>(p) * per_point;
        const Vec vp = raised_gradient(space, V, x);
        const Vec y = Y.value(x);
        switch (form) {
            case ConditionForm::BracketGradient:
            case ConditionForm::BracketScaling: {
                const Vec bracket = raised_gradient_jacobian(space, V, x) * y - Y.jacobian(x) * vp;
                A.block(r, 0, n, 1) = vp;
                if (form == ConditionForm::BracketGradient) A.block(r, 1, n, 1) = y;
                b.segment(r, n) = -bracket;
                break;
            }
            case ConditionForm::DirectionalScaling:
            case ConditionForm::DirectionalGradient: {
                const double dir = V.grad(x).dot(y);
                A(r, 0) = V.eval(x);
                if (form == ConditionForm::DirectionalGradient) {
                    if (!Y.potential()) throw InvalidArgument(Y.label() + " has no generating potential");
                    A(r, 1) = Y.potential_value(x);
                    A(r, 2) = 1.0;
                } else {
                    A(r, 1) = 1.0;
                }
                b(r) = -dir;
                break;
            }
            case ConditionForm::Proportional:
                A.block(r, 0, n, 1) = vp;
                b.segment(r, n) = y;
                break;
            case ConditionForm::ProjectiveFactor: {
                const Polynomial* S = Y.projective_factor() ? &*Y.projective_factor()
                                                            : (Y.potential() ? &*Y.potential() : nullptr);
                if (!S) throw InvalidArgument(Y.label() + " has no scalar factor");
                Vec dS(n);
                for (Eigen::Index k = 0; k < n; ++k) dS(k) = S->derivative(static_cast<std::size_t>(k))(x);
                A(r, 0) = (*S)(x);
                b(r) = dS.dot(vp);
                break;
            }
        }
    }

    // Row scaling so that every sample contributes on a comparable footing.
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
        const double s = std::max({1.0, A.row(r).cwiseAbs().maxCoeff(), std::abs(b(r))});
        A.row(r) /= s;
        b(r) /= s;
    }

    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    const Vec c = svd.solve(b);
    ConstraintSolution sol;
    sol.residual = (A * c - b).cwiseAbs().maxCoeff();
    sol.free_parameters = static_cast<std::size_t>(nu) - static_cast<std::size_t>(svd.rank());
    for (Eigen::Index i = 0; i < nu; ++i) sol.constants[names[static_cast<std::size_t>(i)]] = c(i);
    if (!(sol.residual < tol) || !c.allFinite()) {
        sol.status = ConstraintSolution::Status::Infeasible;
        return sol;
    }
    sol.status = ConstraintSolution::Status::NumericLeastSquares;
    if (sol.free_parameters == 0) {
        if (auto exact = closed_form(Y, V, form, space, points)) {
            sol.constants = *exact;
            sol.status = ConstraintSolution::Status::ExactClosedForm;
        }
    }
    return sol;
}

}  // namespace symclass
