#include "symclass/ode.hpp"

#include "symclass/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace symclass::ode {

namespace {

// Dormand–Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b (5th order) minus b* (4th order)
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 - (-92097.0 / 339200), e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

double error_norm(const Vec& err, const Vec& y0, const Vec& y1, const Options& opt) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = opt.atol + opt.rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        const double r = err(i) / sc;
        sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(std::max<Eigen::Index>(1, err.size())));
}

// d/dt f(t, y(t)) by differences along the tangent; one-sided at the ends of [lo, hi].
Vec second_derivative(const Rhs& f, double t, const Vec& y, const Vec& dy, double lo, double hi) {
    const double d = 1e-5 * std::max(1.0, std::abs(t)) / std::max(1.0, dy.cwiseAbs().maxCoeff());
    Vec fp(y.size()), fm(y.size());
    if (t - d >= lo && t + d <= hi) {
        f(t + d, y + d * dy, fp);
        f(t - d, y - d * dy, fm);
        return (fp - fm) / (2.0 * d);
    }
    const double s = t - d < lo ? d : -d;
    Vec f0(y.size());
    f(t, y, f0);
    f(t + s, y + s * dy, fp);
    f(t + 2.0 * s, y + 2.0 * s * dy, fm);
    return (-3.0 * f0 + 4.0 * fp - fm) / (2.0 * s);
}

}  // namespace

DenseSolution::DenseSolution(std::vector<double> t, std::vector<Vec> y, std::vector<Vec> dy, std::vector<Vec> d2y)
    : t_(std::move(t)), y_(std::move(y)), dy_(std::move(dy)), d2y_(std::move(d2y)) {
    if (t_.empty() || y_.size() != t_.size() || dy_.size() != t_.size())
        throw InvalidArgument("dense solution needs matching node arrays");
    if (!d2y_.empty() && d2y_.size() != t_.size()) throw InvalidArgument("dense solution second derivatives mismatch");
    for (std::size_t i = 1; i < t_.size(); ++i)
        if (!(t_[i] > t_[i - 1])) throw InvalidArgument("dense solution nodes must increase");
}

std::size_t DenseSolution::segment(double t) const {
    if (t_.size() == 1) {
        if (t != t_.front()) throw OutOfDomain("dense solution has a single node");
        return 0;
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(t));
    if (t < t_.front() - slack || t > t_.back() + slack) {
        std::ostringstream os;
        os << "t = " << t << " outside dense solution range [" << t_.front() << ", " << t_.back() << "]";
        throw OutOfDomain(os.str());
    }
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - t_.begin());
    if (k == 0) k = 1;
    if (k >= t_.size()) k = t_.size() - 1;
    return k - 1;
}

Vec DenseSolution::operator()(double t) const {
    const std::size_t k = segment(t);
    if (t_.size() == 1) return y_[0];
    const double h = t_[k + 1] - t_[k];
    const double s = (t - t_[k]) / h;
    const double s2 = s * s, s3 = s2 * s;
    if (d2y_.empty()) {
        return (2 * s3 - 3 * s2 + 1) * y_[k] + (s3 - 2 * s2 + s) * h * dy_[k] + (-2 * s3 + 3 * s2) * y_[k + 1] +
               (s3 - s2) * h * dy_[k + 1];
    }
    const double s4 = s3 * s, s5 = s4 * s;
    const double h0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    const double h1 = s - 6 * s3 + 8 * s4 - 3 * s5;
    const double h2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    const double h3 = 10 * s3 - 15 * s4 + 6 * s5;
    const double h4 = -4 * s3 + 7 * s4 - 3 * s5;
    const double h5 = 0.5 * s3 - s4 + 0.5 * s5;
    return h0 * y_[k] + h1 * h * dy_[k] + h2 * h * h * d2y_[k] + h3 * y_[k + 1] + h4 * h * dy_[k + 1] +
           h5 * h * h * d2y_[k + 1];
}

Vec DenseSolution::derivative(double t) const {
    const std::size_t k = segment(t);
    if (t_.size() == 1) return dy_[0];
    const double h = t_[k + 1] - t_[k];
    const double s = (t - t_[k]) / h;
    const double s2 = s * s, s3 = s2 * s;
    if (d2y_.empty()) {
        return ((6 * s2 - 6 * s) * y_[k] + (-6 * s2 + 6 * s) * y_[k + 1]) / h + (3 * s2 - 4 * s + 1) * dy_[k] +
               (3 * s2 - 2 * s) * dy_[k + 1];
    }
    const double s4 = s3 * s;
    const double d0 = -30 * s2 + 60 * s3 - 30 * s4;
    const double d1 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
    const double d2 = s - 4.5 * s2 + 6 * s3 - 2.5 * s4;
    const double d3 = 30 * s2 - 60 * s3 + 30 * s4;
    const double d4 = -12 * s2 + 28 * s3 - 15 * s4;
    const double d5 = 1.5 * s2 - 4 * s3 + 2.5 * s4;
    return (d0 * y_[k] + d3 * y_[k + 1]) / h + d1 * dy_[k] + d2 * h * d2y_[k] + d4 * dy_[k + 1] +
           d5 * h * d2y_[k + 1];
}

double DenseSolution::component(double t, std::size_t i) const {
    return (*this)(t)(static_cast<Eigen::Index>(i));
}

double DenseSolution::combination(double t, const Vec& weights) const { return (*this)(t).dot(weights); }

DenseSolution solve(const Rhs& f, double t0, const Vec& y0, double t1, const Options& opt) {
    const Eigen::Index n = y0.size();
    std::vector<double> ts{t0};
    std::vector<Vec> ys{y0};
    std::vector<Vec> dys;
    Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y1(n), err(n);
    f(t0, y0, k1);
    dys.push_back(k1);
    if (!k1.allFinite()) throw StepFailure("right-hand side not finite at initial point");
    if (t1 == t0) return DenseSolution(ts, ys, dys, {second_derivative(f, t0, y0, k1, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity())});

    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    double h = opt.initial_step;
    if (h <= 0.0) {
        const double d0 = y0.norm() / std::sqrt(static_cast<double>(n)) + 1e-12;
        const double d1 = k1.norm() / std::sqrt(static_cast<double>(n)) + 1e-12;
        h = std::min(0.01 * d0 / d1, 1e-3 * span);
        h = std::max(h, 1e-10 * span);
    }
    h = std::min({h, opt.max_step, span});

    double t = t0;
    Vec y = y0;
    std::size_t rejected = 0;
    std::size_t steps = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++steps > opt.max_steps) throw StepFailure("maximum number of steps exceeded");
        const bool last = h >= std::abs(t1 - t) * (1.0 - 1e-12);
        if (last) h = std::abs(t1 - t);
        const double hs = dir * h;

        f(t + c2 * hs, y + hs * (a21 * k1), k2);
        f(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2), k3);
        f(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3), k4);
        f(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5);
        f(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6);
        y1 = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(t + hs, y1, k7);
        err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double en = y1.allFinite() && k7.allFinite() ? error_norm(err, y, y1, opt)
                                                         : std::numeric_limits<double>::infinity();
        if (en <= 1.0) {
            t = last ? t1 : t + hs;
            y = y1;
            k1 = k7;
            if (opt.guard) opt.guard(t, y);
            ts.push_back(t);
            ys.push_back(y);
            dys.push_back(k1);
            const double fac = en == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(en, -0.2)));
            h = std::min(h * fac, opt.max_step);
        } else {
            ++rejected;
            const double fac = std::isfinite(en) ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.2;
            h *= fac;
            if (h < 1e-14 * std::max(1.0, std::abs(t))) {
                std::ostringstream os;
                os << "step size underflow at t = " << t;
                throw StepFailure(os.str());
            }
        }
    }

    std::vector<Vec> d2ys;
    d2ys.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) d2ys.push_back(second_derivative(f, ts[i], ys[i], dys[i], std::min(t0, t1), std::max(t0, t1)));

    if (dir < 0.0) {
        std::reverse(ts.begin(), ts.end());
        std::reverse(ys.begin(), ys.end());
        std::reverse(dys.begin(), dys.end());
        std::reverse(d2ys.begin(), d2ys.end());
    }
    DenseSolution sol(std::move(ts), std::move(ys), std::move(dys), std::move(d2ys));
    sol.rejected_steps = rejected;
    return sol;
}

DenseSolution solve_two_sided(const Rhs& f, double t0, const Vec& y0, double t_lo, double t_hi, const Options& opt) {
    if (!(t_lo <= t0 && t0 <= t_hi)) throw InvalidArgument("two-sided solve needs t_lo <= t0 <= t_hi");
    DenseSolution back = solve(f, t0, y0, t_lo, opt);
    DenseSolution fwd = solve(f, t0, y0, t_hi, opt);
    if (back.nodes() == 1) return fwd;
    if (fwd.nodes() == 1) return back;
    std::vector<double> ts = back.times();
    std::vector<Vec> ys = back.states();
    std::vector<Vec> dys, d2ys;
    ts.pop_back();
    ys.pop_back();
    ts.insert(ts.end(), fwd.times().begin(), fwd.times().end());
    ys.insert(ys.end(), fwd.states().begin(), fwd.states().end());
    dys.reserve(ts.size());
    d2ys.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        Vec d(y0.size());
        f(ts[i], ys[i], d);
        d2ys.push_back(second_derivative(f, ts[i], ys[i], d, t_lo, t_hi));
        dys.push_back(std::move(d));
    }
    DenseSolution sol(std::move(ts), std::move(ys), std::move(dys), std::move(d2ys));
    sol.rejected_steps = back.rejected_steps + fwd.rejected_steps;
    return sol;
}

}  // namespace symclass::ode
