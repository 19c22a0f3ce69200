#include "symclass/noether_classifier.hpp"

#include "symclass/errors.hpp"
#include "symclass/linear_family.hpp"
#include "symclass/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace symclass {
namespace {

constexpr double kZeroTol = 1e-9;

Vec unit(std::size_t n, std::size_t i) {
    Vec e = Vec::Zero(static_cast<Eigen::Index>(n));
    e(static_cast<Eigen::Index>(i)) = 1.0;
    return e;
}

double directional(const ScalarField& V, const Collineation& Y, const Vec& x) { return V.grad(x).dot(Y.value(x)); }

// Reduced row-echelon form of the rows of A; zero rows dropped.
Mat rref(Mat A) {
    const Eigen::Index rows = A.rows(), cols = A.cols();
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    Eigen::Index pr = 0;
    for (Eigen::Index c = 0; c < cols && pr < rows; ++c) {
        Eigen::Index best = pr;
        for (Eigen::Index r = pr + 1; r < rows; ++r)
            if (std::abs(A(r, c)) > std::abs(A(best, c))) best = r;
        if (std::abs(A(best, c)) < 1e-9 * scale) continue;
        A.row(pr).swap(A.row(best));
        A.row(pr) /= A(pr, c);
        for (Eigen::Index r = 0; r < rows; ++r)
            if (r != pr) A.row(r) -= A(r, c) * A.row(pr);
        ++pr;
    }
    for (Eigen::Index i = 0; i < A.size(); ++i)
        if (std::abs(A.data()[i]) < 1e-12) A.data()[i] = 0.0;
    return A.topRows(pr);
}

Eigen::Index pivot_of(const Mat& R, Eigen::Index r) {
    for (Eigen::Index c = 0; c < R.cols(); ++c)
        if (R(r, c) != 0.0) return c;
    return -1;
}

}  // namespace

double NoetherSymmetry::gauge(double t, const Vec& x) const {
    double f = 0.0;
    for (const auto& term : gauge_terms) f += term(t, x);
    return f;
}

std::string NoetherSymmetry::describe() const {
    std::ostringstream os;
    os << generator.describe() << ", f = ";
    bool first = true;
    for (const auto& term : gauge_terms) {
        if (term.coefficient.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << term.coefficient.describe() << ")";
        if (!term.label.empty()) os << "*" << term.label;
    }
    if (first) os << "0";
    return os.str();
}

NoetherCaseOutcome noether_case_I(const ProblemContext& ctx) {
    NoetherCaseOutcome out;
    std::vector<const Collineation*> vecs;
    for (const auto& Y : ctx.catalog())
        if (Y.is_killing() || Y.cls() == CollineationClass::GradientHV) vecs.push_back(&Y);
    const auto nv = static_cast<Eigen::Index>(vecs.size());
    // β, a_Y..., μ, c2
    const Eigen::Index unknowns = 3 + nv;
    const Eigen::Index mu_col = 1 + nv, c2_col = 2 + nv;
    const auto& V = ctx.potential();
    const auto& omega = ctx.omega();
    const auto& pts = ctx.points();
    const auto& times = ctx.times();
    Mat rows = Mat::Zero(static_cast<Eigen::Index>(pts.size() + times.size()), unknowns);
    Eigen::Index r = 0;
    for (const auto& x : pts) {
        for (Eigen::Index a = 0; a < nv; ++a) rows(r, 1 + a) = directional(V, *vecs[static_cast<std::size_t>(a)], x);
        rows(r, mu_col) = V.eval(x);
        rows(r, c2_col) = 1.0;
        ++r;
    }
    for (double t : times) {
        const double l = omega.log_deriv(t);
        rows(r, 0) = l;
        for (Eigen::Index a = 0; a < nv; ++a)
            rows(r, 1 + a) = 2.0 * vecs[static_cast<std::size_t>(a)]->psi() * (1.0 + t * l);
        rows(r, mu_col) = -1.0;
        ++r;
    }
    const Mat basis = canonical_basis(null_space(normalize_rows(rows), ctx.settings().exact_null_tol));
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        const Vec z = basis.col(c);
        const double beta = z(0), mu = z(mu_col), c2 = z(c2_col);
        double alpha = 0.0;
        std::vector<VectorTerm> eta;
        NoetherSymmetry N;
        N.constants = {{"d1", beta}, {"d2", mu}, {"c2", c2}};
        for (Eigen::Index a = 0; a < nv; ++a) {
            const double coef = z(1 + a);
            if (std::abs(coef) <= kZeroTol) continue;
            const Collineation Y = *vecs[static_cast<std::size_t>(a)];
            alpha += 2.0 * coef * Y.psi();
            eta.push_back({TimeFunction::constant(coef), [Y](const Vec& x) { return Y.value(x); }, Y.label()});
            N.constants["a_" + Y.label()] = coef;
            if (Y.psi() != 0.0) N.constants["psi"] = Y.psi();
        }
        N.constants["alpha"] = alpha;
        std::vector<ScalarTerm> xi;
        if (std::abs(alpha) > kZeroTol || std::abs(beta) > kZeroTol)
            xi.push_back({TimeFunction::polynomial({beta, alpha}), {}, ""});
        if (xi.empty() && eta.empty()) continue;
        N.generator = PointSymmetry(ctx.dimension(), std::move(xi), std::move(eta), "NoetherI");
        N.generator.constants = N.constants;
        N.case_tag = "I";
        if (std::abs(c2) > kZeroTol) {
            const OmegaProfile w = omega;
            N.gauge_terms.push_back({TimeFunction::evaluator([w, c2](double t) { return c2 * w.antiderivative(t); },
                                                             [w, c2](double t) { return c2 * w.eval(t); },
                                                             "c2*int(omega)"),
                                     {},
                                     ""});
        }
        out.symmetries.push_back(std::move(N));
    }
    return out;
}

NoetherCaseOutcome noether_case_II(const ProblemContext& ctx) {
    NoetherCaseOutcome out;
    const auto& V = ctx.potential();
    const auto& omega = ctx.omega();
    const auto& pts = ctx.points();
    for (const auto& Y : ctx.catalog()) {
        if (Y.cls() != CollineationClass::GradientKV && Y.cls() != CollineationClass::GradientHV) continue;
        const double psi = Y.psi();
        const auto prop = potential_condition_solve(Y, V, ConditionForm::Proportional, ctx.space(), pts,
                                                    ctx.settings().feasibility_tol);
        const bool parallel = prop.feasible() && prop.free_parameters == 0 && std::abs(prop["k"]) > kZeroTol;
        const std::string tag = parallel ? "II.b" : "II.a";

        // Functions multiplying (K'/ω, T''/ω, T, W) with W = ξ' + ℓξ = 2ψT + ℓξ.
        Mat F(static_cast<Eigen::Index>(pts.size()), 4);
        for (std::size_t p = 0; p < pts.size(); ++p) {
            const auto pi = static_cast<Eigen::Index>(p);
            F(pi, 0) = 1.0;
            F(pi, 1) = Y.potential_value(pts[p]);
            F(pi, 2) = directional(V, Y, pts[p]);
            F(pi, 3) = V.eval(pts[p]);
        }
        const Mat N = null_space(normalize_columns(F), ctx.settings().exact_null_tol);
        // Undo the column scaling so relations hold for the raw functions.
        Mat Nraw = N;
        for (Eigen::Index c = 0; c < F.cols(); ++c) {
            const double norm = F.col(c).norm();
            if (norm > 0.0) Nraw.row(c) /= norm;
        }
        const Mat P = N.cols() == 4 ? Mat(0, 4) : Mat(null_space(Nraw.transpose(), 1e-10).transpose());
        const Mat R = P.rows() == 0 ? P : rref(P);
        Vec k_row = Vec::Zero(4), t_row = Vec::Zero(4);
        bool has_t_pivot = false;
        std::vector<Vec> cons;
        for (Eigen::Index r = 0; r < R.rows(); ++r) {
            const Eigen::Index piv = pivot_of(R, r);
            if (piv == 0) {
                k_row = R.row(r).transpose();
            } else if (piv == 1) {
                t_row = R.row(r).transpose();
                has_t_pivot = true;
            } else if (piv >= 2) {
                cons.push_back(R.row(r).transpose());
            }
        }
        if (!has_t_pivot) {
            out.rejected.push_back({tag, Y.label(), "T,tt is not determined by the potential condition"});
            continue;
        }
        // K'/ω = −(k1 T''/ω + k2 T + k3 W); k1 vanishes in reduced form since T'' is a pivot.
        const double pT = t_row(2), pW = t_row(3);
        const double qT = k_row(2), qW = k_row(3);
        const bool closed = std::abs(pT) < kZeroTol && std::abs(pW) < kZeroTol && std::abs(qT) < kZeroTol &&
                            std::abs(qW) < kZeroTol;
        std::optional<SolutionFamily> family;
        // State (ξ, T, T', K).
        if (closed) {
            std::vector<Mat> C(3, Mat::Zero(4, 4));
            C[0] = Mat::Identity(4, 4);
            C[1](0, 1) = 2.0 * psi;
            C[1](1, 2) = 1.0;
            C[2](0, 2) = psi;
            family = SolutionFamily::polynomial(std::move(C), ctx.t0());
        } else {
            LinearSystem sys{4, [&omega, psi, pT, pW, qT, qW](double t) {
                                 const double w = omega.eval(t), wl = w * omega.log_deriv(t);
                                 Mat A = Mat::Zero(4, 4);
                                 A(0, 1) = 2.0 * psi;
                                 A(1, 2) = 1.0;
                                 A(2, 0) = -pW * wl;
                                 A(2, 1) = -w * (pT + 2.0 * psi * pW);
                                 A(3, 0) = -qW * wl;
                                 A(3, 1) = -w * (qT + 2.0 * psi * qW);
                                 return A;
                             }};
            try {
                family = SolutionFamily::integrate(sys, ctx.t0(), ctx.window_lo(), ctx.window_hi(), ctx.settings().ode);
            } catch (const OdeSolveFailure& e) {
                out.rejected.push_back({tag, Y.label(), e.what()});
                continue;
            }
        }
        std::vector<StateConstraint> constraints;
        for (const auto& c : cons) {
            const double rT = c(2), rW = c(3);
            constraints.push_back([&omega, rT, rW, psi](double t) {
                Vec row = Vec::Zero(4);
                row(0) = rW * omega.log_deriv(t);
                row(1) = rT + 2.0 * psi * rW;
                return row;
            });
        }
        const double tol = closed ? ctx.settings().exact_null_tol : ctx.settings().numeric_null_tol;
        const Mat params = constrained_parameters(*family, constraints, ctx.times(), tol);
        const Mat nontrivial = complement_within(params, unit(4, 3));
        if (nontrivial.cols() == 0) {
            out.rejected.push_back({tag, Y.label(), "only the trivial solution T = 0"});
            continue;
        }
        constraints.push_back([](double) { return unit(4, 1); });
        const Mat bad = constrained_parameters(*family, constraints, ctx.times(), tol);
        const Mat bad_nontrivial = complement_within(bad, unit(4, 3));
        const Mat good = complement_within(nontrivial, bad_nontrivial);
        for (Eigen::Index c = 0; c < bad_nontrivial.cols(); ++c)
            out.rejected.push_back({tag, Y.label() + "#r" + std::to_string(c + 1), "T vanishes identically"});

        std::map<std::string, double> constants{{"psi", psi}};
        const auto dg = potential_condition_solve(Y, V, ConditionForm::DirectionalGradient, ctx.space(), pts,
                                                  ctx.settings().feasibility_tol);
        if (dg.feasible() && dg.free_parameters == 0) {
            constants["d1"] = dg["d"] - 2.0 * psi;
            constants["m"] = dg["m"];
            constants["k"] = dg["k"];
        }
        const Collineation Ycopy = Y;
        for (Eigen::Index c = 0; c < good.cols(); ++c) {
            const Vec p = good.col(c);
            const std::string label = Y.label() + "#" + std::to_string(c + 1);
            TimeFunction xi_c = family->component(0, p, "xi[" + label + "]");
            TimeFunction T = family->component(1, p, "T[" + label + "]");
            TimeFunction Tt = family->component(2, p, "T,t[" + label + "]");
            TimeFunction K = family->component(3, p, "K[" + label + "]");
            std::vector<ScalarTerm> xi;
            if (xi_c.max_abs_on(ctx.window_lo(), ctx.window_hi()) > kZeroTol) xi.push_back({xi_c, {}, ""});
            std::vector<VectorTerm> eta{{T, [Ycopy](const Vec& x) { return Ycopy.value(x); }, Y.label()}};
            NoetherSymmetry Ns;
            Ns.generator = PointSymmetry(ctx.dimension(), std::move(xi), std::move(eta), "Noether" + tag);
            Ns.generator.coefficients.emplace("xi", xi_c);
            Ns.generator.coefficients.emplace("T", T);
            Ns.generator.coefficients.emplace("K", K);
            Ns.generator.constants = constants;
            Ns.constants = constants;
            Ns.case_tag = tag;
            Ns.K = K;
            const std::string s_label = Y.potential() ? Y.potential()->to_string() : "S";
            Ns.gauge_terms.push_back({Tt, [Ycopy](const Vec& x) { return Ycopy.potential_value(x); }, s_label});
            Ns.gauge_terms.push_back({K, {}, ""});
            out.symmetries.push_back(std::move(Ns));
        }
    }
    return out;
}

NoetherClassification classify_noether(const MetricSpace& space, const ScalarField& V, const OmegaProfile& omega,
                                       const std::vector<Collineation>& catalog, const ClassifierSettings& settings) {
    const ProblemContext ctx(space, V, omega, catalog, settings);
    require_nonconstant_omega(ctx);
    std::array<NoetherCaseOutcome, 2> cases;
    parallel_for(2, [&](std::size_t i) { cases[i] = i == 0 ? noether_case_I(ctx) : noether_case_II(ctx); });
    NoetherClassification result;
    std::vector<const NoetherSymmetry*> all;
    std::vector<const PointSymmetry*> gens;
    for (const auto& c : cases)
        for (const auto& s : c.symmetries) {
            all.push_back(&s);
            gens.push_back(&s.generator);
        }
    if (!all.empty()) {
        const auto pts = rank_points(ctx, std::max<std::size_t>(3 * all.size(), 30));
        const auto keep = independent_subset(gens, pts, settings.rank_tol);
        std::vector<bool> kept(all.size(), false);
        for (auto i : keep) kept[i] = true;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (kept[i])
                result.symmetries.push_back(*all[i]);
            else
                result.duplicates.push_back(
                    {all[i]->case_tag, all[i]->describe(), "linearly dependent on earlier generators"});
        }
    }
    result.case_I = std::move(cases[0]);
    result.case_II = std::move(cases[1]);
    return result;
}

std::function<double(double, const Vec&)> gauge_function(const NoetherSymmetry& sym) {
    auto terms = sym.gauge_terms;
    return [terms](double t, const Vec& x) {
        double f = 0.0;
        for (const auto& term : terms) f += term(t, x);
        return f;
    };
}

FirstIntegral noether_integral(const NoetherSymmetry& sym, const MetricSpace& space, const ScalarField& V,
                               const OmegaProfile& omega) {
    const PointSymmetry X = sym.generator;
    const auto f = gauge_function(sym);
    FirstIntegral I;
    I.eval = [X, f, space, V, omega](double t, const Vec& x, const Vec& v) {
        const Mat g = space.metric(x);
        const double energy = 0.5 * v.dot(g * v) + omega.eval(t) * V.eval(x);
        return X.xi(t, x) * energy - X.eta(t, x).dot(g * v) + f(t, x);
    };
    I.provenance = "Noether " + sym.case_tag + ": " + sym.describe();
    I.description = "xi*(g(v,v)/2 + omega*V) - g(eta, v) + f";
    return I;
}

}  // namespace symclass
