#include "symclass/reparam.hpp"

#include "symclass/errors.hpp"
#include "symclass/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace symclass {
namespace {

using Fn = std::function<double(double)>;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void require_finite_inside(const Interval& span, const Interval& validity, const std::string& what) {
    if (!span.finite() || !(span.hi > span.lo))
        throw InvalidArgument(what + ": interval " + span.to_string() + " must be finite and non-empty");
    if (!validity.contains(span.lo) || !validity.contains(span.hi))
        throw OutOfDomain(what + ": interval " + span.to_string() + " leaves validity " + validity.to_string());
}

// g with f(g(y)) = y for increasing f on [lo, hi]; bisection, at most 80 halvings.
Fn bisect_inverse(Fn f, double lo, double hi) {
    const double f_lo = f(lo), f_hi = f(hi);
    return [f, lo, hi, f_lo, f_hi](double y) {
        const double slack = 1e-12 * std::max(1.0, std::abs(f_hi - f_lo));
        if (y < f_lo - slack || y > f_hi + slack)
            throw OutOfDomain("value " + fmt(y) + " outside [" + fmt(f_lo) + ", " + fmt(f_hi) + "]");
        if (y <= f_lo) return lo;
        if (y >= f_hi) return hi;
        double a = lo, b = hi;
        for (int it = 0; it < 80 && b - a > 1e-12 * std::max(1.0, std::abs(a)) * 1e-3; ++it) {
            const double m = 0.5 * (a + b);
            if (f(m) < y)
                a = m;
            else
                b = m;
        }
        return 0.5 * (a + b);
    };
}

ode::Options tight_options() {
    ode::Options opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-14;
    return opt;
}

void require_positive(const OmegaProfile& omega, const Interval& span) {
    constexpr int probes = 257;
    for (int k = 0; k < probes; ++k) {
        const double s = span.lo + (span.hi - span.lo) * k / (probes - 1);
        const double w = omega.eval(s);
        if (!(w > 0.0)) throw NegativeOmega("omega(" + fmt(s) + ") = " + fmt(w) + " is not positive");
    }
}

}  // namespace

std::string to_string(DampingFamily f) {
    switch (f) {
        case DampingFamily::Constant: return "Constant";
        case DampingFamily::PowerLaw: return "PowerLaw";
        case DampingFamily::Tabulated: return "Tabulated";
        case DampingFamily::Mapped: return "Mapped";
    }
    return "?";
}

DampingProfile DampingProfile::constant(double c) {
    DampingProfile p;
    p.family_ = DampingFamily::Constant;
    p.params_ = {c};
    return p;
}

DampingProfile DampingProfile::power_law(double b) {
    DampingProfile p;
    p.family_ = DampingFamily::PowerLaw;
    p.params_ = {b};
    p.validity_ = Interval::open(0.0, std::numeric_limits<double>::infinity());
    return p;
}

DampingProfile DampingProfile::tabulated(std::vector<double> t, std::vector<double> phi) {
    DampingProfile p;
    p.family_ = DampingFamily::Tabulated;
    p.table_ = std::make_shared<const MonotoneCubic>(std::move(t), std::move(phi));
    p.validity_ = Interval::closed(p.table_->front(), p.table_->back());
    return p;
}

DampingProfile DampingProfile::mapped(Fn value, Interval validity, std::string description) {
    if (!value) throw InvalidArgument("mapped damping needs an evaluator");
    DampingProfile p;
    p.family_ = DampingFamily::Mapped;
    p.value_ = std::move(value);
    p.validity_ = validity;
    p.description_ = std::move(description);
    return p;
}

std::string DampingProfile::name() const {
    switch (family_) {
        case DampingFamily::Constant: return "phi = " + fmt(params_[0]);
        case DampingFamily::PowerLaw: return "phi = " + fmt(params_[0]) + "/t";
        case DampingFamily::Tabulated:
            return "phi tabulated on " + validity_.to_string() + " (" + std::to_string(table_->knots().size()) +
                   " knots)";
        case DampingFamily::Mapped: return description_;
    }
    return "?";
}

double DampingProfile::eval(double t) const {
    if (!validity_.contains(t)) throw OutOfDomain("damping evaluated at " + fmt(t) + " outside " + validity_.to_string());
    switch (family_) {
        case DampingFamily::Constant: return params_[0];
        case DampingFamily::PowerLaw: return params_[0] / t;
        case DampingFamily::Tabulated: return (*table_)(t);
        case DampingFamily::Mapped: return value_(t);
    }
    return 0.0;
}

TimeMap::TimeMap(Fn forward, Fn derivative, Fn second_derivative, Interval t_domain, Fn inverse)
    : S_(std::move(forward)), dS_(std::move(derivative)), d2S_(std::move(second_derivative)), t_domain_(t_domain) {
    if (!t_domain_.finite()) throw InvalidArgument("time map needs a finite domain");
    s_domain_ = Interval::closed(S_(t_domain_.lo), S_(t_domain_.hi));
    inv_ = inverse ? std::move(inverse) : bisect_inverse(S_, t_domain_.lo, t_domain_.hi);
}

double TimeMap::forward(double t) const {
    if (!t_domain_.contains(t)) throw OutOfDomain("time map evaluated at " + fmt(t) + " outside " + t_domain_.to_string());
    return S_(t);
}

double TimeMap::derivative(double t) const {
    if (!t_domain_.contains(t)) throw OutOfDomain("time map evaluated at " + fmt(t) + " outside " + t_domain_.to_string());
    return dS_(t);
}

double TimeMap::second_derivative(double t) const {
    if (!t_domain_.contains(t)) throw OutOfDomain("time map evaluated at " + fmt(t) + " outside " + t_domain_.to_string());
    return d2S_(t);
}

double TimeMap::inverse(double s) const {
    const double slack = 1e-12 * std::max(1.0, s_domain_.hi - s_domain_.lo);
    if (s < s_domain_.lo - slack || s > s_domain_.hi + slack)
        throw OutOfDomain("inverse time map evaluated at " + fmt(s) + " outside " + s_domain_.to_string());
    return std::clamp(inv_(std::clamp(s, s_domain_.lo, s_domain_.hi)), t_domain_.lo, t_domain_.hi);
}

DampedToTimeDep damped_to_timedep(const DampingProfile& phi, const Interval& t_interval) {
    require_finite_inside(t_interval, phi.validity(), "damped_to_timedep");
    const double t0 = t_interval.lo;
    const Interval dom = Interval::closed(t_interval.lo, t_interval.hi);
    const std::string desc = "omega from " + phi.name();

    if (phi.family() == DampingFamily::Constant) {
        const double c = phi.parameters()[0];
        if (c == 0.0) {
            TimeMap map([](double t) { return t; }, [](double) { return 1.0; }, [](double) { return 0.0; }, dom,
                        [](double s) { return s; });
            const Interval sdom = map.s_domain();
            return {map, OmegaProfile::mapped([](double) { return 1.0; }, [](double) { return 0.0; }, sdom, "omega = 1")};
        }
        TimeMap map([c, t0](double t) { return t0 + (1.0 - std::exp(-c * (t - t0))) / c; },
                    [c, t0](double t) { return std::exp(-c * (t - t0)); },
                    [c, t0](double t) { return -c * std::exp(-c * (t - t0)); }, dom,
                    [c, t0](double s) { return t0 - std::log1p(-c * (s - t0)) / c; });
        const Interval sdom = map.s_domain();
        OmegaProfile affine = OmegaProfile::inverse_square_affine(-c, 1.0 + c * t0);
        if (affine.validity().contains(sdom.lo) && affine.validity().contains(sdom.hi)) return {map, affine};
        OmegaProfile w = OmegaProfile::mapped(
            [c, t0](double s) {
                const double u = 1.0 - c * (s - t0);
                return 1.0 / (u * u);
            },
            [c, t0](double s) { return 2.0 * c / (1.0 - c * (s - t0)); }, sdom, desc);
        return {map, w};
    }

    if (phi.family() == DampingFamily::PowerLaw) {
        const double b = phi.parameters()[0];
        Fn S, inv;
        if (b == 1.0) {
            S = [t0](double t) { return t0 + t0 * std::log(t / t0); };
            inv = [t0](double s) { return t0 * std::exp((s - t0) / t0); };
        } else {
            const double q = 1.0 - b;
            S = [t0, b, q](double t) { return t0 + std::pow(t0, b) * (std::pow(t, q) - std::pow(t0, q)) / q; };
            inv = [t0, b, q](double s) { return std::pow(std::pow(t0, q) + q * (s - t0) * std::pow(t0, -b), 1.0 / q); };
        }
        TimeMap map(S, [t0, b](double t) { return std::pow(t / t0, -b); },
                    [t0, b](double t) { return -(b / t) * std::pow(t / t0, -b); }, dom, inv);
        const Interval sdom = map.s_domain();
        OmegaProfile w = OmegaProfile::mapped(
            [map, t0, b](double s) { return std::pow(map.inverse(s) / t0, 2.0 * b); },
            [map, t0, b](double s) {
                const double t = map.inverse(s);
                return 2.0 * (b / t) * std::pow(t / t0, b);
            },
            sdom, desc);
        return {map, w};
    }

    // y = (Φ, S)
    const DampingProfile p = phi;
    ode::Rhs rhs = [p](double t, const Vec& y, Vec& dy) {
        dy(0) = p.eval(t);
        dy(1) = std::exp(-y(0));
    };
    Vec y0(2);
    y0 << 0.0, t0;
    auto sol = std::make_shared<const ode::DenseSolution>(ode::solve(rhs, t0, y0, t_interval.hi, tight_options()));
    TimeMap map([sol](double t) { return sol->component(t, 1); },
                [sol](double t) { return std::exp(-sol->component(t, 0)); },
                [sol, p](double t) { return -p.eval(t) * std::exp(-sol->component(t, 0)); }, dom);
    const Interval sdom = map.s_domain();
    OmegaProfile w = OmegaProfile::mapped(
        [map, sol](double s) { return std::exp(2.0 * sol->component(map.inverse(s), 0)); },
        [map, sol, p](double s) {
            const double t = map.inverse(s);
            return 2.0 * p.eval(t) * std::exp(sol->component(t, 0));
        },
        sdom, desc);
    return {map, w};
}

TimeDepToDamped timedep_to_damped(const OmegaProfile& omega, const Interval& s_interval) {
    require_finite_inside(s_interval, omega.validity(), "timedep_to_damped");
    require_positive(omega, s_interval);
    const double s0 = s_interval.lo, s1 = s_interval.hi;
    const OmegaProfile w = omega;

    // tfun = S⁻¹ : s ↦ t, sfun = S : t ↦ s
    Fn tfun, sfun;
    const auto ex = omega.power_exponent();
    const auto isq = omega.inverse_square_form();
    if (omega.family() == OmegaFamily::InverseSquareScaled) {
        const double g = std::abs(omega.parameters()[0]);
        tfun = [s0, g](double s) { return s0 + g * std::log(s / s0); };
        sfun = [s0, g](double t) { return s0 * std::exp((t - s0) / g); };
    } else if (omega.family() == OmegaFamily::PowerLaw && ex) {
        const double p = *ex / 2.0 + 1.0;
        if (p == 0.0) {
            tfun = [s0](double s) { return s0 + std::log(s / s0); };
            sfun = [s0](double t) { return s0 * std::exp(t - s0); };
        } else {
            tfun = [s0, p](double s) { return s0 + (std::pow(s, p) - std::pow(s0, p)) / p; };
            sfun = [s0, p](double t) { return std::pow(std::pow(s0, p) + p * (t - s0), 1.0 / p); };
        }
    } else if (omega.family() == OmegaFamily::InverseSquareAffine && isq) {
        const double d1 = isq->first, d2 = isq->second;
        const double u0 = d1 * s0 + d2;
        const double sg = u0 > 0.0 ? 1.0 : -1.0;
        tfun = [s0, d1, d2, u0, sg](double s) { return s0 + sg * std::log((d1 * s + d2) / u0) / d1; };
        sfun = [s0, d1, d2, u0, sg](double t) { return (u0 * std::exp(sg * d1 * (t - s0)) - d2) / d1; };
    } else {
        ode::Rhs rhs = [w](double s, const Vec&, Vec& dy) { dy(0) = std::sqrt(w.eval(s)); };
        Vec y0(1);
        y0 << s0;
        auto sol = std::make_shared<const ode::DenseSolution>(ode::solve(rhs, s0, y0, s1, tight_options()));
        tfun = [sol](double s) { return sol->component(s, 0); };
    }
    const double t_hi = tfun(s1);
    if (!sfun) sfun = bisect_inverse(tfun, s0, s1);
    const Interval tdom = Interval::closed(s0, t_hi);
    const Fn phi_fn = [w, sfun](double t) {
        const double s = sfun(t);
        return w.log_deriv(s) / (2.0 * std::sqrt(w.eval(s)));
    };
    TimeMap map([sfun](double t) { return sfun(t); }, [w, sfun](double t) { return 1.0 / std::sqrt(w.eval(sfun(t))); },
                [w, sfun, phi_fn](double t) { return -phi_fn(t) / std::sqrt(w.eval(sfun(t))); }, tdom, tfun);
    if (isq) return {map, DampingProfile::constant(phi_fn(0.5 * (s0 + t_hi)))};
    return {map, DampingProfile::mapped(phi_fn, tdom, "phi from " + omega.name())};
}

Trajectory map_trajectory(const Trajectory& traj, const TimeMap& map, MapDirection direction) {
    const std::size_t count = std::max<std::size_t>(2000, 4 * traj.nodes());
    std::vector<double> ts(count);
    std::vector<Vec> xs(count), vs(count), as(count);
    if (direction == MapDirection::DampedToTimeDep) {
        const auto& dom = map.t_domain();
        const double slack = 1e-12 * std::max(1.0, dom.hi - dom.lo);
        if (traj.t_front() < dom.lo - slack || traj.t_back() > dom.hi + slack)
            throw OutOfDomain("trajectory leaves the time map domain " + dom.to_string());
        const double a = map.forward(std::max(traj.t_front(), dom.lo));
        const double b = map.forward(std::min(traj.t_back(), dom.hi));
        for (std::size_t k = 0; k < count; ++k) {
            const double s = a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1);
            const double t = std::clamp(map.inverse(s), traj.t_front(), traj.t_back());
            const double d1 = map.derivative(t), d2 = map.second_derivative(t);
            const Vec v = traj.velocity(t);
            ts[k] = s;
            xs[k] = traj.position(t);
            vs[k] = v / d1;
            as[k] = (traj.acceleration(t) - (d2 / d1) * v) / (d1 * d1);
        }
    } else {
        const auto& dom = map.s_domain();
        const double slack = 1e-12 * std::max(1.0, dom.hi - dom.lo);
        if (traj.t_front() < dom.lo - slack || traj.t_back() > dom.hi + slack)
            throw OutOfDomain("trajectory leaves the time map image " + dom.to_string());
        const double a = map.inverse(traj.t_front());
        const double b = map.inverse(traj.t_back());
        for (std::size_t k = 0; k < count; ++k) {
            const double t = a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1);
            const double s = std::clamp(map.forward(t), traj.t_front(), traj.t_back());
            const double d1 = map.derivative(t), d2 = map.second_derivative(t);
            const Vec v = traj.velocity(s);
            ts[k] = t;
            xs[k] = traj.position(s);
            vs[k] = v * d1;
            as[k] = traj.acceleration(s) * (d1 * d1) + v * d2;
        }
    }
    return Trajectory(std::move(ts), std::move(xs), std::move(vs), std::move(as), traj.info());
}

double damping_round_trip_residual(const DampingProfile& phi, const Interval& t_interval, std::size_t samples) {
    const auto forward = damped_to_timedep(phi, t_interval);
    const auto back = timedep_to_damped(forward.omega, forward.map.s_domain());
    const auto& dom = back.map.t_domain();
    const double a = std::max(t_interval.lo, dom.lo), b = std::min(t_interval.hi, dom.hi);
    double worst = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = a + (b - a) * static_cast<double>(k) / static_cast<double>(samples - 1);
        worst = std::max(worst, std::abs(back.damping.eval(t) - phi.eval(t)));
    }
    return worst;
}

double omega_round_trip_residual(const OmegaProfile& omega, const Interval& s_interval, std::size_t samples) {
    const auto back = timedep_to_damped(omega, s_interval);
    const auto forward = damped_to_timedep(back.damping, back.map.t_domain());
    const double s0 = s_interval.lo;
    const double w0 = omega.eval(s0);
    const double c = std::sqrt(w0);
    const auto& sdom = forward.omega.validity();
    double worst = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double s = s0 + (s_interval.hi - s0) * static_cast<double>(k) / static_cast<double>(samples - 1);
        const double sh = std::clamp(s0 + c * (s - s0), sdom.lo, sdom.hi);
        worst = std::max(worst, std::abs(forward.omega.eval(sh) * w0 / omega.eval(s) - 1.0));
    }
    return worst;
}

}  // namespace symclass
