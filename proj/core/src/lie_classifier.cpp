#include "symclass/lie_classifier.hpp"

#include "symclass/errors.hpp"
#include "symclass/linear_family.hpp"
#include "symclass/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace symclass {
namespace {

constexpr double kZeroTol = 1e-9;

bool is_gradient_kv_or_hv(const Collineation& Y) {
    return Y.cls() == CollineationClass::GradientKV || Y.cls() == CollineationClass::GradientHV;
}

Vec unit(std::size_t n, std::size_t i) {
    Vec e = Vec::Zero(static_cast<Eigen::Index>(n));
    e(static_cast<Eigen::Index>(i)) = 1.0;
    return e;
}

double null_tol(const ProblemContext& ctx, const SolutionFamily& family) {
    return family.is_polynomial() ? ctx.settings().exact_null_tol : ctx.settings().numeric_null_tol;
}

// State (D, D', T, T') with D'' = 2ψ T' and T'' = row(t)·y.
// Polynomial family when the T'' row vanishes identically.
SolutionFamily dt_family(const ProblemContext& ctx, double psi, const std::function<Vec(double)>& t_row) {
    if (!t_row) {
        std::vector<Mat> C(3, Mat::Zero(4, 4));
        C[0] = Mat::Identity(4, 4);
        C[1](0, 1) = 1.0;
        C[1](1, 3) = 2.0 * psi;
        C[1](2, 3) = 1.0;
        C[2](0, 3) = psi;
        return SolutionFamily::polynomial(std::move(C), ctx.t0());
    }
    LinearSystem sys{4, [psi, t_row](double t) {
                         Mat A = Mat::Zero(4, 4);
                         A(0, 1) = 1.0;
                         A(1, 3) = 2.0 * psi;
                         A(2, 3) = 1.0;
                         A.row(3) = t_row(t).transpose();
                         return A;
                     }};
    return SolutionFamily::integrate(sys, ctx.t0(), ctx.window_lo(), ctx.window_hi(), ctx.settings().ode);
}

PointSymmetry dt_symmetry(const ProblemContext& ctx, const SolutionFamily& family, const Vec& p,
                          const Collineation& Y, const std::string& tag, const std::string& label) {
    TimeFunction D = family.component(0, p, "D[" + label + "]");
    TimeFunction T = family.component(2, p, "T[" + label + "]");
    std::vector<ScalarTerm> xi;
    if (D.max_abs_on(ctx.window_lo(), ctx.window_hi()) > kZeroTol) xi.push_back({D, {}, ""});
    std::vector<VectorTerm> eta;
    eta.push_back({T, [Y](const Vec& x) { return Y.value(x); }, Y.label()});
    PointSymmetry X(ctx.dimension(), std::move(xi), std::move(eta), tag);
    X.coefficients.emplace("D", D);
    X.coefficients.emplace("T", T);
    X.constants["psi"] = Y.psi();
    return X;
}

// Emits the solutions in `params` except those in the subspace where
// `degenerate` also vanishes, which are recorded as rejected.
void emit_split(const ProblemContext& ctx, const SolutionFamily& family, const Mat& params,
                std::vector<StateConstraint> constraints, const StateConstraint& degenerate, const Collineation& Y,
                const std::string& tag, const std::string& reason, const std::map<std::string, double>& constants,
                CaseOutcome& out) {
    constraints.push_back(degenerate);
    const Mat bad = constrained_parameters(family, constraints, ctx.times(), null_tol(ctx, family));
    const Mat good = complement_within(params, bad);
    for (Eigen::Index c = 0; c < bad.cols(); ++c) {
        const std::string label = Y.label() + "#r" + std::to_string(c + 1);
        PointSymmetry X = dt_symmetry(ctx, family, bad.col(c), Y, tag, label);
        out.rejected.push_back({tag, X.describe(), reason});
    }
    for (Eigen::Index c = 0; c < good.cols(); ++c) {
        const std::string label = Y.label() + "#" + std::to_string(c + 1);
        PointSymmetry X = dt_symmetry(ctx, family, good.col(c), Y, tag, label);
        for (const auto& [k, v] : constants) X.constants[k] = v;
        out.symmetries.push_back(std::move(X));
    }
}

bool parallel_to_gradient(const ProblemContext& ctx, const Collineation& Y, double* k = nullptr) {
    const auto sol = potential_condition_solve(Y, ctx.potential(), ConditionForm::Proportional, ctx.space(),
                                               ctx.points(), ctx.settings().feasibility_tol);
    if (!sol.feasible() || sol.free_parameters > 0) return false;
    const double kk = sol["k"];
    if (std::abs(kk) < kZeroTol) return false;
    if (k) *k = kk;
    return true;
}

}  // namespace

CaseOutcome lie_case_I(const ProblemContext& ctx) {
    CaseOutcome out;
    std::vector<const Collineation*> affine;
    for (const auto& Y : ctx.catalog())
        if (Y.is_affine()) affine.push_back(&Y);
    const std::size_t n = ctx.dimension();
    const auto na = static_cast<Eigen::Index>(affine.size());
    const Eigen::Index unknowns = 3 + na;  // α, β, a_Y..., μ
    const auto& pts = ctx.points();
    const auto& times = ctx.times();
    Mat rows = Mat::Zero(static_cast<Eigen::Index>(pts.size() * n + times.size()), unknowns);
    Eigen::Index r = 0;
    for (std::size_t p = 0; p < pts.size(); ++p) {
        const Vec& vp = ctx.raised_gradient_at(p);
        std::vector<Vec> brackets;
        for (const auto* Y : affine) brackets.push_back(ctx.bracket_with_gradient(*Y, p));
        for (std::size_t i = 0; i < n; ++i, ++r) {
            const auto ii = static_cast<Eigen::Index>(i);
            for (Eigen::Index a = 0; a < na; ++a) rows(r, 2 + a) = brackets[static_cast<std::size_t>(a)](ii);
            rows(r, unknowns - 1) = vp(ii);
        }
    }
    for (double t : times) {
        const double l = ctx.omega().log_deriv(t);
        rows(r, 0) = t * l + 2.0;
        rows(r, 1) = l;
        rows(r, unknowns - 1) = -1.0;
        ++r;
    }
    const Mat basis = canonical_basis(null_space(normalize_rows(rows), ctx.settings().exact_null_tol));
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        const Vec z = basis.col(c);
        const double alpha = z(0), beta = z(1), mu = z(unknowns - 1);
        std::vector<ScalarTerm> xi;
        if (std::abs(alpha) > kZeroTol || std::abs(beta) > kZeroTol)
            xi.push_back({TimeFunction::polynomial({beta, alpha}), {}, ""});
        std::vector<VectorTerm> eta;
        std::map<std::string, double> constants{{"d1", alpha}, {"d2", beta}, {"mu", mu}};
        bool has_vector = false;
        for (Eigen::Index a = 0; a < na; ++a) {
            const double coef = z(2 + a);
            if (std::abs(coef) <= kZeroTol) continue;
            has_vector = true;
            const Collineation Y = *affine[static_cast<std::size_t>(a)];
            eta.push_back({TimeFunction::constant(coef), [Y](const Vec& x) { return Y.value(x); }, Y.label()});
            constants["a_" + Y.label()] = coef;
        }
        if (xi.empty() && eta.empty()) continue;
        PointSymmetry X(n, std::move(xi), std::move(eta), has_vector ? "I.2" : "I.1");
        X.constants = std::move(constants);
        X.coefficients.emplace("D", TimeFunction::polynomial({beta, alpha}));
        out.symmetries.push_back(std::move(X));
    }
    return out;
}

CaseOutcome lie_case_II(const ProblemContext& ctx) {
    CaseOutcome out;
    const auto& omega = ctx.omega();
    for (const auto& Y : ctx.catalog()) {
        if (!is_gradient_kv_or_hv(Y)) continue;
        if (parallel_to_gradient(ctx, Y)) continue;
        const auto sol = potential_condition_solve(Y, ctx.potential(), ConditionForm::BracketGradient, ctx.space(),
                                                   ctx.points(), ctx.settings().feasibility_tol);
        if (!sol.feasible()) {
            out.rejected.push_back({"II", Y.label(), "L_Y V' + d0 V' + m Y = 0 has no solution"});
            continue;
        }
        const double d0 = sol["d0"];
        const double m = sol["m"];
        const double psi = Y.psi();
        std::function<Vec(double)> t_row;
        if (std::abs(m) > kZeroTol) {
            t_row = [&omega, m](double t) {
                Vec row = Vec::Zero(4);
                row(2) = m * omega.eval(t);
                return row;
            };
        }
        const SolutionFamily family = dt_family(ctx, psi, t_row);
        std::vector<StateConstraint> constraints{[&omega, d0](double t) {
            Vec c(4);
            c << omega.log_deriv(t), 2.0, -d0, 0.0;
            return c;
        }};
        const Mat params = constrained_parameters(family, constraints, ctx.times(), null_tol(ctx, family));
        emit_split(ctx, family, params, constraints, [](double) { return unit(4, 2); }, Y, "II",
                   "T vanishes identically", {{"d0", d0}, {"m", m}}, out);
    }
    return out;
}

CaseOutcome lie_case_III(const ProblemContext& ctx) {
    CaseOutcome out;
    const auto& omega = ctx.omega();
    const StateConstraint flat_T = [](double) { return unit(4, 3); };
    const std::string reason = "T,t vanishes identically";
    bool any_route = false;
    for (const auto& Y : ctx.catalog()) {
        if (!is_gradient_kv_or_hv(Y)) continue;
        double k = 0.0;
        if (parallel_to_gradient(ctx, Y, &k)) {
            any_route = true;
            const SolutionFamily family = dt_family(ctx, Y.psi(), [&omega, k](double t) {
                Vec row = Vec::Zero(4);
                row(0) = -omega.derivative(t) / k;
                row(1) = -2.0 * omega.eval(t) / k;
                return row;
            });
            emit_split(ctx, family, Mat::Identity(4, 4), {}, flat_T, Y, "III", reason, {{"k", k}}, out);
            continue;
        }
        if (Y.cls() != CollineationClass::GradientHV) continue;
        const auto sol = potential_condition_solve(Y, ctx.potential(), ConditionForm::BracketGradient, ctx.space(),
                                                   ctx.points(), ctx.settings().feasibility_tol);
        if (!sol.feasible() || std::abs(sol["m"]) > kZeroTol) continue;
        any_route = true;
        const double d0 = sol["d0"];
        const SolutionFamily family = dt_family(ctx, Y.psi(), {});
        std::vector<StateConstraint> constraints{[&omega, d0](double t) {
            Vec c(4);
            c << omega.log_deriv(t), 2.0, -d0, 0.0;
            return c;
        }};
        const Mat params = constrained_parameters(family, constraints, ctx.times(), null_tol(ctx, family));
        emit_split(ctx, family, params, constraints, flat_T, Y, "III", reason, {{"d0", d0}, {"m", 0.0}}, out);
    }
    if (!any_route) out.inapplicable = "V' is not proportional to a gradient KV or HV";
    return out;
}

CaseOutcome lie_case_IV(const ProblemContext& ctx) {
    CaseOutcome out;
    if (!ctx.space().is_euclidean()) {
        out.inapplicable = "special projective case is implemented for Euclidean space only";
        return out;
    }
    const Collineation* H = nullptr;
    for (const auto& Y : ctx.catalog())
        if (Y.cls() == CollineationClass::GradientHV) H = &Y;
    double k = 0.0;
    if (H == nullptr || !parallel_to_gradient(ctx, *H, &k)) {
        out.inapplicable = "V' is not a gradient HV";
        return out;
    }
    const double kappa = 1.0 / k;
    const auto& omega = ctx.omega();
    bool excluded = true;
    for (double t : ctx.times())
        if (std::abs(kappa * omega.eval(t) * t * t - 0.25) > 1e-9) excluded = false;
    if (excluded) {
        out.inapplicable = "excluded input: kappa * omega = 1/(4 t^2)";
        return out;
    }
    std::vector<const Collineation*> gradient_kvs;
    for (const auto& Y : ctx.catalog())
        if (Y.cls() == CollineationClass::GradientKV) gradient_kvs.push_back(&Y);

    std::optional<SolutionFamily> family;
    for (const auto& P : ctx.catalog()) {
        if (P.cls() != CollineationClass::SpecialPC) continue;
        const Polynomial S = *P.projective_factor();
        bool factor_is_kv_potential = false;
        for (const auto* Y : gradient_kvs) {
            double diff = 0.0;
            for (const auto& x : ctx.points()) diff = std::max(diff, std::abs(Y->potential_value(x) - S(x)));
            if (diff < 1e-10) factor_is_kv_potential = true;
        }
        if (!factor_is_kv_potential) {
            out.rejected.push_back({"IV", P.label(), "projective factor is not a gradient KV potential"});
            continue;
        }
        const auto sol = potential_condition_solve(P, ctx.potential(), ConditionForm::ProjectiveFactor, ctx.space(),
                                                   ctx.points(), ctx.settings().feasibility_tol);
        if (!sol.feasible() || std::abs(sol["lambda1"] - kappa) > 1e-8 * (1.0 + std::abs(kappa))) {
            out.rejected.push_back({"IV", P.label(), "S_,j V'^j = lambda1 S fails"});
            continue;
        }
        if (!family) {
            LinearSystem sys{2, [&omega, kappa](double t) {
                                 Mat A = Mat::Zero(2, 2);
                                 A(0, 1) = kappa;
                                 A(1, 0) = -omega.eval(t);
                                 return A;
                             }};
            family = SolutionFamily::integrate(sys, ctx.t0(), ctx.window_lo(), ctx.window_hi(), ctx.settings().ode);
        }
        const MetricSpace* space = &ctx.space();
        const ScalarField* V = &ctx.potential();
        for (std::size_t seed = 0; seed < 2; ++seed) {
            const Vec p = unit(2, seed);
            const std::string tag = P.label() + "#" + std::to_string(seed + 1);
            TimeFunction C = family->component(0, p, "C[" + tag + "]");
            TimeFunction T = family->component(1, p, "T[" + tag + "]");
            std::vector<ScalarTerm> xi{{C, [S](const Vec& x) { return S(x); }, S.to_string()}};
            std::vector<VectorTerm> eta{{T, [S, space, V](const Vec& x) -> Vec { return S(x) * raised_gradient(*space, *V, x); },
                                         "(" + S.to_string() + ")*V'"}};
            PointSymmetry X(ctx.dimension(), std::move(xi), std::move(eta), "IV");
            X.coefficients.emplace("C", C);
            X.coefficients.emplace("T", T);
            X.constants = {{"lambda", 1.0}, {"lambda1", kappa}, {"lambda2", -1.0}, {"a0", kappa}, {"a7", -1.0}};
            out.symmetries.push_back(std::move(X));
        }
    }
    return out;
}

LieClassification classify_lie(const MetricSpace& space, const ScalarField& V, const OmegaProfile& omega,
                               const std::vector<Collineation>& catalog, const ClassifierSettings& settings) {
    const ProblemContext ctx(space, V, omega, catalog, settings);
    require_nonconstant_omega(ctx);
    std::array<CaseOutcome, 4> cases;
    parallel_for(4, [&](std::size_t i) {
        switch (i) {
            case 0: cases[0] = lie_case_I(ctx); break;
            case 1: cases[1] = lie_case_II(ctx); break;
            case 2: cases[2] = lie_case_III(ctx); break;
            default: cases[3] = lie_case_IV(ctx); break;
        }
    });
    LieClassification result;
    std::vector<const PointSymmetry*> all;
    for (const auto& c : cases)
        for (const auto& s : c.symmetries) all.push_back(&s);
    if (!all.empty()) {
        const auto pts = rank_points(ctx, std::max<std::size_t>(3 * all.size(), 30));
        const auto keep = independent_subset(all, pts, settings.rank_tol);
        std::vector<bool> kept(all.size(), false);
        for (auto i : keep) kept[i] = true;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (kept[i])
                result.symmetries.push_back(*all[i]);
            else
                result.duplicates.push_back(
                    {all[i]->case_tag(), all[i]->describe(), "linearly dependent on earlier generators"});
        }
    }
    result.case_I = std::move(cases[0]);
    result.case_II = std::move(cases[1]);
    result.case_III = std::move(cases[2]);
    result.case_IV = std::move(cases[3]);
    return result;
}

}  // namespace symclass
