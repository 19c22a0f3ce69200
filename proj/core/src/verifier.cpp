#include "symclass/verifier.hpp"

#include "symclass/errors.hpp"
#include "symclass/ode.hpp"
#include "symclass/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace symclass {
namespace {

using Field = std::function<Vec(double, const Vec&)>;

// Derivatives of a vector field F(t, x) by 5-point central stencils.
struct Derivs {
    Vec f, ft, ftt;
    Mat fx, ftx;              // (component, k)
    std::vector<Mat> fxx;     // per component, (j, k)
};

constexpr std::array<int, 4> kOffsets{-2, -1, 1, 2};
constexpr std::array<double, 4> kWeights{1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};

Derivs differentiate(const Field& F, double t, const Vec& x, bool second) {
    const auto n = x.size();
    const double scale = 1.0 + std::abs(t) + x.norm();
    // Steps along x are wider: the fields are low-degree in x, so roundoff dominates there.
    // Time coefficients may be dense ODE output and keep the narrow steps.
    const double h1t = 1e-5 * scale, h1x = 1e-3 * scale, h2t = 1e-4 * scale, h2x = 2e-3 * scale;
    auto h2 = [&](Eigen::Index a) { return a == 0 ? h2t : h2x; };
    auto at = [&](Eigen::Index a, double da, Eigen::Index b, double db) {
        double tt = t;
        Vec xx = x;
        if (a == 0) tt += da; else if (a > 0) xx(a - 1) += da;
        if (b == 0) tt += db; else if (b > 0) xx(b - 1) += db;
        return F(tt, xx);
    };
    auto first = [&](Eigen::Index a, double h) {
        Vec acc = kWeights[0] * at(a, kOffsets[0] * h, -1, 0.0);
        for (std::size_t p = 1; p < 4; ++p) acc += kWeights[p] * at(a, kOffsets[p] * h, -1, 0.0);
        return Vec(acc / h);
    };
    Derivs d;
    d.f = F(t, x);
    const auto m = d.f.size();
    d.ft = first(0, h1t);
    d.fx.resize(m, n);
    for (Eigen::Index k = 0; k < n; ++k) d.fx.col(k) = first(k + 1, h1x);
    if (!second) return d;
    auto pure = [&](Eigen::Index a) {
        const double h = h2(a);
        // Differences against f first, so a field constant along the axis gives exactly 0.
        const Vec near = (at(a, h, -1, 0.0) - d.f) + (at(a, -h, -1, 0.0) - d.f);
        const Vec far = (at(a, 2 * h, -1, 0.0) - d.f) + (at(a, -2 * h, -1, 0.0) - d.f);
        return Vec((16.0 * near - far) / (12.0 * h * h));
    };
    auto mixed = [&](Eigen::Index a, Eigen::Index b) {
        const double ha = h2(a), hb = h2(b);
        // Derivative along b on each a-offset, taken relative to the one at a = 0.
        auto along_b = [&](double da) {
            Vec g = Vec::Zero(m);
            for (std::size_t q = 0; q < 4; ++q) g += kWeights[q] * at(a, da, b, kOffsets[q] * hb);
            return g;
        };
        const Vec g0 = along_b(0.0);
        Vec acc = Vec::Zero(m);
        for (std::size_t p = 0; p < 4; ++p) acc += kWeights[p] * (along_b(kOffsets[p] * ha) - g0);
        return Vec(acc / (ha * hb));
    };
    d.ftt = pure(0);
    d.ftx.resize(m, n);
    for (Eigen::Index k = 0; k < n; ++k) d.ftx.col(k) = mixed(0, k + 1);
    d.fxx.assign(static_cast<std::size_t>(m), Mat(n, n));
    for (Eigen::Index j = 0; j < n; ++j) {
        const Vec jj = pure(j + 1);
        for (Eigen::Index c = 0; c < m; ++c) d.fxx[static_cast<std::size_t>(c)](j, j) = jj(c);
        for (Eigen::Index k = j + 1; k < n; ++k) {
            const Vec jk = mixed(j + 1, k + 1);
            for (Eigen::Index c = 0; c < m; ++c) {
                d.fxx[static_cast<std::size_t>(c)](j, k) = jk(c);
                d.fxx[static_cast<std::size_t>(c)](k, j) = jk(c);
            }
        }
    }
    return d;
}

// Relative residual |Σ terms| / max(1, Σ |terms|).
struct Acc {
    double sum = 0.0, abs = 0.0;
    void add(double v) {
        sum += v;
        abs += std::abs(v);
    }
    double rel() const { return std::abs(sum) / std::max(1.0, abs); }
};

JetBox check_box(double lo, double hi) {
    constexpr double margin = 0.05;
    JetBox box;
    box.t_lo = std::max(box.t_lo, lo + margin);
    box.t_hi = std::min(box.t_hi, hi - margin);
    if (!(box.t_hi > box.t_lo)) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || hi - lo <= 2 * margin)
            throw OutOfDomain("no admissible time window for verification samples");
        box.t_lo = lo + margin;
        box.t_hi = hi - margin;
    }
    return box;
}

std::vector<Jet> verification_jets(const PointSymmetry& sym, const MetricSpace& space, const ScalarField& V,
                                   const OmegaProfile& omega, const VerifyOptions& opt) {
    const double lo = std::max(sym.t_front(), omega.validity().lo);
    const double hi = std::min(sym.t_back(), omega.validity().hi);
    const JetBox box = check_box(lo, hi);
    return sample_jets(opt.samples, sym.dimension(), opt.seed, box, [&space, &V](const Vec& x) {
        if (!space.in_chart(x)) return false;
        if (V.is_singular() && x.norm() < std::max(V.min_radius(), 0.5)) return false;
        return true;
    });
}

Field generator_field(const PointSymmetry& sym) {
    return [&sym](double t, const Vec& x) {
        const auto n = static_cast<Eigen::Index>(sym.dimension());
        Vec out(n + 1);
        out(0) = sym.xi(t, x);
        out.tail(n) = sym.eta(t, x);
        return out;
    };
}

ResidualReport collect(const std::vector<std::map<std::string, double>>& per_sample, double tolerance) {
    std::vector<double> worst(per_sample.size(), 0.0);
    std::map<std::string, double> comps;
    for (std::size_t k = 0; k < per_sample.size(); ++k)
        for (const auto& [name, v] : per_sample[k]) {
            worst[k] = std::max(worst[k], v);
            comps[name] = std::max(comps[name], v);
        }
    ResidualReport r = ResidualReport::from_samples(worst, tolerance);
    r.components = std::move(comps);
    return r;
}

ode::Rhs motion_rhs(const MetricSpace& space, const ScalarField& V, std::function<double(double)> omega,
                    std::function<double(double)> damping) {
    const auto n = static_cast<Eigen::Index>(space.dimension());
    return [&space, &V, omega, damping, n](double t, const Vec& y, Vec& dy) {
        const Vec x = y.head(n), v = y.tail(n);
        const Tensor3 G = space.christoffel(x);
        Vec a = Vec::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index k = 0; k < n; ++k) a(i) -= G(i, j, k) * v(j) * v(k);
        a -= omega(t) * raised_gradient(space, V, x);
        if (damping) a -= damping(t) * v;
        dy.head(n) = v;
        dy.tail(n) = a;
    };
}

Trajectory run_motion(const MetricSpace& space, const ScalarField& V, const ode::Rhs& rhs, const Vec& x0,
                      const Vec& v0, std::pair<double, double> span, double tol) {
    const auto n = static_cast<Eigen::Index>(space.dimension());
    if (x0.size() != n || v0.size() != n) throw InvalidArgument("initial condition dimension mismatch");
    if (!(span.second > span.first)) throw InvalidArgument("integration span must be increasing");
    const bool singular = V.is_singular();
    if (singular && x0.norm() < singularity_radius)
        throw SingularityReached("initial point within r_min of the singularity");
    ode::Options opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;
    opt.guard = [singular, n](double t, const Vec& y) {
        if (singular && y.head(n).norm() < singularity_radius)
            throw SingularityReached("trajectory reached r < r_min at t = " + std::to_string(t));
    };
    Vec y0(2 * n);
    y0 << x0, v0;
    try {
        auto sol = std::make_shared<const ode::DenseSolution>(ode::solve(rhs, span.first, y0, span.second, opt));
        IntegrationInfo info{opt.rtol, opt.atol, sol->nodes() - 1, sol->rejected_steps};
        return Trajectory(sol, static_cast<std::size_t>(n), info);
    } catch (const OutOfDomain& e) {
        throw SingularityReached(std::string("coefficient left its domain: ") + e.what());
    } catch (const SingularPoint& e) {
        throw SingularityReached(e.what());
    } catch (const OutOfChart& e) {
        throw SingularityReached(e.what());
    }
}

}  // namespace

ResidualReport ResidualReport::from_samples(const std::vector<double>& values, double tolerance) {
    ResidualReport r;
    r.tolerance = tolerance;
    r.samples = values.size();
    if (values.empty()) return r;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    r.max = sorted.back();
    r.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    const auto idx = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(sorted.size()))) - 1;
    r.p95 = sorted[std::min(idx, sorted.size() - 1)];
    r.passed = r.max < tolerance;
    return r;
}

Trajectory integrate(const MetricSpace& space, const ScalarField& V, const OmegaProfile& omega, const Vec& x0,
                     const Vec& v0, std::pair<double, double> t_span, double tol) {
    const auto rhs = motion_rhs(space, V, [&omega](double t) { return omega.eval(t); }, {});
    return run_motion(space, V, rhs, x0, v0, t_span, tol);
}

Trajectory integrate_damped(const MetricSpace& space, const ScalarField& V, const DampingProfile& phi, const Vec& x0,
                            const Vec& v0, std::pair<double, double> t_span, double tol) {
    const auto rhs = motion_rhs(space, V, [](double) { return 1.0; }, [&phi](double t) { return phi.eval(t); });
    return run_motion(space, V, rhs, x0, v0, t_span, tol);
}

ResidualReport check_convergence(const MetricSpace& space, const ScalarField& V, const OmegaProfile& omega,
                                 const Vec& x0, const Vec& v0, std::pair<double, double> t_span, double tol) {
    const Trajectory coarse = integrate(space, V, omega, x0, v0, t_span, tol);
    const Trajectory fine = integrate(space, V, omega, x0, v0, t_span, tol / 10.0);
    const double t1 = t_span.second;
    const double scale = 1.0 + std::max(fine.position(t1).lpNorm<Eigen::Infinity>(),
                                        fine.velocity(t1).lpNorm<Eigen::Infinity>());
    const double gap = std::max((coarse.position(t1) - fine.position(t1)).lpNorm<Eigen::Infinity>(),
                                (coarse.velocity(t1) - fine.velocity(t1)).lpNorm<Eigen::Infinity>()) /
                       scale;
    return ResidualReport::from_samples({gap}, 10.0 * tol);
}

ResidualReport check_determining_eqs(const PointSymmetry& sym, const MetricSpace& space, const ScalarField& V,
                                     const OmegaProfile& omega, const VerifyOptions& opt) {
    const auto jets = verification_jets(sym, space, V, omega, opt);
    const auto n = static_cast<Eigen::Index>(sym.dimension());
    const Field F = generator_field(sym);
    std::vector<std::map<std::string, double>> per(jets.size());
    parallel_for(jets.size(), [&](std::size_t s) {
        const double t = jets[s].t;
        const Vec& x = jets[s].x;
        const Derivs d = differentiate(F, t, x, true);
        const double w = omega.eval(t), wp = omega.derivative(t);
        const Vec Vp = raised_gradient(space, V, x);
        const Mat JV = raised_gradient_jacobian(space, V, x);
        const Tensor3 G = space.christoffel(x);
        const Tensor4 dG = space.christoffel_derivative(x);
        const double xi_t = d.ft(0), xi_tt = d.ftt(0);
        auto eta = [&](Eigen::Index i) { return d.f(1 + i); };
        auto eta_t = [&](Eigen::Index i) { return d.ft(1 + i); };
        auto eta_x = [&](Eigen::Index i, Eigen::Index j) { return d.fx(1 + i, j); };
        auto xi_x = [&](Eigen::Index k) { return d.fx(0, k); };
        auto xi_tx = [&](Eigen::Index k) { return d.ftx(0, k); };
        double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            Acc a;
            for (Eigen::Index j = 0; j < n; ++j) {
                a.add(w * eta(j) * JV(i, j));
                a.add(-w * Vp(j) * eta_x(i, j));
            }
            a.add(d.f(0) * wp * Vp(i));
            a.add(2.0 * w * xi_t * Vp(i));
            a.add(d.ftt(1 + i));
            r1 = std::max(r1, a.rel());
        }
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                Acc a;
                a.add(2.0 * d.ftx(1 + i, j));
                for (Eigen::Index k = 0; k < n; ++k) a.add(2.0 * G(i, j, k) * eta_t(k));
                if (i == j) {
                    a.add(-xi_tt);
                    for (Eigen::Index k = 0; k < n; ++k) a.add(w * xi_x(k) * Vp(k));
                }
                a.add(2.0 * w * xi_x(j) * Vp(i));
                r2 = std::max(r2, a.rel());
            }
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index k = 0; k < n; ++k) {
                    Acc a;
                    a.add(d.fxx[static_cast<std::size_t>(1 + i)](j, k));
                    for (Eigen::Index l = 0; l < n; ++l) {
                        a.add(eta(l) * dG(i, j, k, l));
                        a.add(-G(l, j, k) * eta_x(i, l));
                        a.add(G(i, l, k) * eta_x(l, j));
                        a.add(G(i, j, l) * eta_x(l, k));
                    }
                    if (i == j) a.add(-xi_tx(k));
                    if (i == k) a.add(-xi_tx(j));
                    r3 = std::max(r3, a.rel());
                }
        for (Eigen::Index a_ = 0; a_ < n; ++a_)
            for (Eigen::Index b = 0; b < n; ++b) {
                Acc a;
                a.add(d.fxx[0](a_, b));
                for (Eigen::Index k = 0; k < n; ++k) a.add(-G(k, a_, b) * xi_x(k));
                r4 = std::max(r4, a.rel());
            }
        per[s] = {{"potential", r1}, {"velocity_linear", r2}, {"connection", r3}, {"xi_hessian", r4}};
    });
    return collect(per, opt.tolerance);
}

ResidualReport check_noether_condition(const NoetherSymmetry& sym, const MetricSpace& space, const ScalarField& V,
                                       const OmegaProfile& omega, const VerifyOptions& opt) {
    const PointSymmetry& X = sym.generator;
    const auto jets = verification_jets(X, space, V, omega, opt);
    const auto n = static_cast<Eigen::Index>(X.dimension());
    const auto f = gauge_function(sym);
    const Field F = [&X, &f, n](double t, const Vec& x) {
        Vec out(n + 2);
        out(0) = X.xi(t, x);
        out.segment(1, n) = X.eta(t, x);
        out(n + 1) = f(t, x);
        return out;
    };
    std::vector<std::map<std::string, double>> per(jets.size());
    parallel_for(jets.size(), [&](std::size_t s) {
        const double t = jets[s].t;
        const Vec& x = jets[s].x;
        const Vec& v = jets[s].v;
        const Derivs d = differentiate(F, t, x, false);
        const double w = omega.eval(t), wp = omega.derivative(t);
        const Mat g = space.metric(x);
        const Tensor3 dg = space.metric_derivative(x);
        const double Vx = V.eval(x);
        const Vec dV = V.grad(x);
        const Vec gv = g * v;
        const double Dxi = d.ft(0) + d.fx.row(0).dot(v);
        const double L = 0.5 * v.dot(gv) - w * Vx;
        Acc a;
        a.add(-d.f(0) * wp * Vx);
        for (Eigen::Index k = 0; k < n; ++k) {
            double quad = 0.0;
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) quad += dg(i, j, k) * v(i) * v(j);
            a.add(d.f(1 + k) * 0.5 * quad);
            a.add(-d.f(1 + k) * w * dV(k));
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            const double eta1 = d.ft(1 + i) + d.fx.row(1 + i).dot(v) - v(i) * Dxi;
            a.add(eta1 * gv(i));
        }
        a.add(Dxi * L);
        a.add(-d.ft(n + 1));
        for (Eigen::Index k = 0; k < n; ++k) a.add(-v(k) * d.fx(n + 1, k));
        per[s] = {{"noether", a.rel()}};
    });
    return collect(per, opt.tolerance);
}

ResidualReport check_noether_split(const NoetherSymmetry& sym, const MetricSpace& space, const ScalarField& V,
                                   const OmegaProfile& omega, const VerifyOptions& opt) {
    const PointSymmetry& X = sym.generator;
    const auto jets = verification_jets(X, space, V, omega, opt);
    const auto n = static_cast<Eigen::Index>(X.dimension());
    const auto f = gauge_function(sym);
    const Field F = [&X, &f, n](double t, const Vec& x) {
        Vec out(n + 2);
        out(0) = X.xi(t, x);
        out.segment(1, n) = X.eta(t, x);
        out(n + 1) = f(t, x);
        return out;
    };
    std::vector<std::map<std::string, double>> per(jets.size());
    parallel_for(jets.size(), [&](std::size_t s) {
        const double t = jets[s].t;
        const Vec& x = jets[s].x;
        const Derivs d = differentiate(F, t, x, false);
        const double w = omega.eval(t), l = omega.log_deriv(t);
        const Mat g = space.metric(x);
        const Tensor3 dg = space.metric_derivative(x);
        const double Vx = V.eval(x);
        const Vec dV = V.grad(x);
        double xi_sp = 0.0;
        for (Eigen::Index k = 0; k < n; ++k)
            xi_sp = std::max(xi_sp, std::abs(d.fx(0, k)) / std::max(1.0, std::abs(d.f(0))));
        double metric = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                Acc a;
                for (Eigen::Index k = 0; k < n; ++k) {
                    a.add(d.f(1 + k) * dg(i, j, k));
                    a.add(g(k, j) * d.fx(1 + k, i));
                    a.add(g(i, k) * d.fx(1 + k, j));
                }
                a.add(-d.ft(0) * g(i, j));
                metric = std::max(metric, a.rel());
            }
        Acc pot;
        for (Eigen::Index k = 0; k < n; ++k) pot.add(dV(k) * d.f(1 + k));
        pot.add(l * d.f(0) * Vx);
        pot.add(d.ft(0) * Vx);
        pot.add(d.ft(n + 1) / w);
        double gauge = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            Acc a;
            for (Eigen::Index j = 0; j < n; ++j) a.add(g(i, j) * d.ft(1 + j));
            a.add(-d.fx(n + 1, i));
            gauge = std::max(gauge, a.rel());
        }
        per[s] = {{"xi_spatial", xi_sp}, {"metric", metric}, {"potential", pot.rel()}, {"gauge", gauge}};
    });
    return collect(per, opt.tolerance);
}

ResidualReport check_integral_drift(const FirstIntegral& I, const Trajectory& traj, double tolerance) {
    const auto& ts = traj.times();
    const double t0 = ts.front();
    const double I0 = I(t0, traj.position(t0), traj.velocity(t0));
    std::vector<double> drift(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k)
        drift[k] = std::abs(I(ts[k], traj.position(ts[k]), traj.velocity(ts[k])) - I0) / (1.0 + std::abs(I0));
    ResidualReport r = ResidualReport::from_samples(drift, tolerance);
    r.components["drift"] = r.max;
    return r;
}

PushResult push_solution(const PointSymmetry& sym, const Trajectory& traj, double eps, const MetricSpace& space,
                         const ScalarField& V, const OmegaProfile& omega, const PushOptions& opt) {
    const std::size_t M = std::max<std::size_t>(opt.samples, 2);
    if (eps == 0.0) {
        PushResult out{traj, ResidualReport::from_samples(std::vector<double>(M, 0.0), opt.eom_tol), std::nullopt};
        if (opt.invariant) out.invariant = ResidualReport::from_samples(std::vector<double>(M, 0.0), opt.invariant_tol);
        return out;
    }
    const auto n = static_cast<Eigen::Index>(sym.dimension());
    const Field F = generator_field(sym);
    // State (t, x, v); dv/dε is the first prolongation.
    const ode::Rhs flow = [&F, n](double, const Vec& y, Vec& dy) {
        const double t = y(0);
        const Vec x = y.segment(1, n), v = y.tail(n);
        const Derivs d = differentiate(F, t, x, false);
        const double Dxi = d.ft(0) + d.fx.row(0).dot(v);
        dy(0) = d.f(0);
        dy.segment(1, n) = d.f.tail(n);
        for (Eigen::Index i = 0; i < n; ++i) dy(1 + n + i) = d.ft(1 + i) + d.fx.row(1 + i).dot(v) - v(i) * Dxi;
    };
    ode::Options fopt;
    fopt.rtol = opt.flow_tol;
    fopt.atol = opt.flow_tol * 1e-2;
    const auto ts = traj.sample_times(M);
    std::vector<Vec> images(M);
    parallel_for(M, [&](std::size_t k) {
        Vec y0(1 + 2 * n);
        y0 << ts[k], traj.position(ts[k]), traj.velocity(ts[k]);
        try {
            const auto sol = ode::solve(flow, 0.0, y0, eps, fopt);
            images[k] = eps > 0.0 ? sol.states().back() : sol.states().front();
        } catch (const Error& e) {
            throw FlowEscape(std::string("flow left the domain: ") + e.what());
        }
    });
    std::vector<double> it(M);
    std::vector<Vec> ix(M), iv(M);
    for (std::size_t k = 0; k < M; ++k) {
        it[k] = images[k](0);
        ix[k] = images[k].segment(1, n);
        iv[k] = images[k].tail(n);
        if (!std::isfinite(it[k]) || !ix[k].allFinite() || !iv[k].allFinite()) throw FlowEscape("non-finite image");
        if (k > 0 && !(it[k] > it[k - 1])) throw FlowEscape("image is not a graph over time");
    }
    // Local defect: the solution through image point k, carried to the time of point k + 1.
    // A single re-integration over the whole span would also measure the base trajectory's own error.
    std::vector<double> eom(M - 1);
    parallel_for(M - 1, [&](std::size_t k) {
        Trajectory step;
        try {
            step = integrate(space, V, omega, ix[k], iv[k], {it[k], it[k + 1]}, 1e-12);
        } catch (const SingularityReached& e) {
            throw FlowEscape(std::string("image leaves the domain: ") + e.what());
        }
        const Vec xr = step.position(step.t_back()), vr = step.velocity(step.t_back());
        const double scale = 1.0 + std::max(xr.lpNorm<Eigen::Infinity>(), vr.lpNorm<Eigen::Infinity>());
        eom[k] = std::max((ix[k + 1] - xr).lpNorm<Eigen::Infinity>(), (iv[k + 1] - vr).lpNorm<Eigen::Infinity>()) / scale;
    });
    PushResult out{Trajectory(it, ix, iv), ResidualReport::from_samples(eom, opt.eom_tol), std::nullopt};
    out.eom.components["eom"] = out.eom.max;
    if (opt.invariant) {
        std::vector<double> change(M);
        for (std::size_t k = 0; k < M; ++k) {
            const double before = opt.invariant(ts[k], traj.position(ts[k]));
            const double after = opt.invariant(it[k], ix[k]);
            change[k] = std::abs(after - before) / std::max(std::abs(before), std::numeric_limits<double>::min());
        }
        out.invariant = ResidualReport::from_samples(change, opt.invariant_tol);
        out.invariant->components["invariant"] = out.invariant->max;
    }
    return out;
}

std::size_t independence_rank(const std::vector<const PointSymmetry*>& syms, std::uint64_t seed, double rel_tol) {
    if (syms.empty()) return 0;
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (const auto* s : syms) {
        lo = std::max(lo, s->t_front());
        hi = std::min(hi, s->t_back());
    }
    const JetBox box = check_box(lo, hi);
    const auto jets = sample_jets(std::max<std::size_t>(3 * syms.size(), 30), syms.front()->dimension(), seed, box);
    std::vector<std::pair<double, Vec>> pts;
    pts.reserve(jets.size());
    for (const auto& j : jets) pts.emplace_back(j.t, j.x);
    return numeric_rank(normalize_columns(generator_matrix(syms, pts)), rel_tol);
}

std::size_t independence_rank(const std::vector<PointSymmetry>& syms, std::uint64_t seed, double rel_tol) {
    std::vector<const PointSymmetry*> ptrs;
    for (const auto& s : syms) ptrs.push_back(&s);
    return independence_rank(ptrs, seed, rel_tol);
}

}  // namespace symclass
