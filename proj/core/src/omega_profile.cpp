#include "symclass/omega_profile.hpp"

#include "symclass/errors.hpp"
#include "symclass/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace symclass {

std::string Interval::to_string() const {
    std::ostringstream os;
    os << (lo_closed ? "[" : "(") << lo << ", " << hi << (hi_closed ? "]" : ")");
    return os.str();
}

std::string to_string(OmegaFamily f) {
    switch (f) {
        case OmegaFamily::PowerLaw: return "PowerLaw";
        case OmegaFamily::InverseSquareAffine: return "InverseSquareAffine";
        case OmegaFamily::InverseSquareScaled: return "InverseSquareScaled";
        case OmegaFamily::Tabulated: return "Tabulated";
        case OmegaFamily::Mapped: return "Mapped";
    }
    return "?";
}

OmegaProfile OmegaProfile::power_law(double a) {
    if (a == 0.0 || !std::isfinite(a)) throw InvalidArgument("PowerLaw exponent must be nonzero (omega,t != 0)");
    OmegaProfile p;
    p.family_ = OmegaFamily::PowerLaw;
    p.params_ = {a};
    p.validity_ = Interval::open(0.0, std::numeric_limits<double>::infinity());
    return p;
}

OmegaProfile OmegaProfile::inverse_square_affine(double d1, double d2) {
    if (d1 == 0.0) throw InvalidArgument("InverseSquareAffine needs d1 != 0 (omega,t != 0)");
    OmegaProfile p;
    p.family_ = OmegaFamily::InverseSquareAffine;
    p.params_ = {d1, d2};
    const double pole = -d2 / d1;
    const double inf = std::numeric_limits<double>::infinity();
    p.validity_ = (1.0 < pole) ? Interval::open(-inf, pole) : Interval::open(pole, inf);
    return p;
}

OmegaProfile OmegaProfile::inverse_square_scaled(double gamma) {
    if (gamma == 0.0 || !std::isfinite(gamma)) throw InvalidArgument("InverseSquareScaled needs gamma != 0");
    OmegaProfile p;
    p.family_ = OmegaFamily::InverseSquareScaled;
    p.params_ = {gamma};
    p.validity_ = Interval::open(0.0, std::numeric_limits<double>::infinity());
    return p;
}

OmegaProfile OmegaProfile::tabulated(std::vector<double> t, std::vector<double> omega) {
    if (t.size() != omega.size() || t.size() < 2) throw InvalidArgument("Tabulated omega needs >= 2 samples");
    bool all_equal = true;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        if (!(omega[i] > 0.0)) throw NegativeOmega("Tabulated omega samples must be positive");
        all_equal = all_equal && omega[i] == omega[0];
    }
    if (all_equal) throw InvalidArgument("Tabulated omega is constant (omega,t != 0 required)");
    OmegaProfile p;
    p.family_ = OmegaFamily::Tabulated;
    p.validity_ = Interval::closed(t.front(), t.back());
    p.table_ = std::make_shared<MonotoneCubic>(std::move(t), std::move(omega));
    return p;
}

OmegaProfile OmegaProfile::mapped(Fn value, Fn log_deriv, Interval validity, std::string description, Fn antiderivative) {
    if (!value || !log_deriv) throw InvalidArgument("mapped omega needs value and log-derivative");
    OmegaProfile p;
    p.family_ = OmegaFamily::Mapped;
    p.validity_ = validity;
    p.value_ = std::move(value);
    p.log_deriv_ = std::move(log_deriv);
    p.anti_ = std::move(antiderivative);
    p.description_ = std::move(description);
    return p;
}

std::string OmegaProfile::name() const {
    std::ostringstream os;
    os.precision(12);
    switch (family_) {
        case OmegaFamily::PowerLaw: os << "t^" << params_[0]; break;
        case OmegaFamily::InverseSquareAffine: os << "1/(" << params_[0] << "*t + " << params_[1] << ")^2"; break;
        case OmegaFamily::InverseSquareScaled: os << params_[0] * params_[0] << "/t^2"; break;
        case OmegaFamily::Tabulated: os << "tabulated(" << table_->knots().size() << " samples)"; break;
        case OmegaFamily::Mapped: os << description_; break;
    }
    return os.str();
}

void OmegaProfile::check(double t) const {
    if (!validity_.contains(t)) {
        std::ostringstream os;
        os << "t = " << t << " outside omega validity " << validity_.to_string();
        throw OutOfDomain(os.str());
    }
}

double OmegaProfile::eval(double t) const {
    check(t);
    switch (family_) {
        case OmegaFamily::PowerLaw: return std::pow(t, params_[0]);
        case OmegaFamily::InverseSquareAffine: {
            const double u = params_[0] * t + params_[1];
            return 1.0 / (u * u);
        }
        case OmegaFamily::InverseSquareScaled: return params_[0] * params_[0] / (t * t);
        case OmegaFamily::Tabulated: return (*table_)(t);
        case OmegaFamily::Mapped: return value_(t);
    }
    return 0.0;
}

double OmegaProfile::log_deriv(double t) const {
    check(t);
    switch (family_) {
        case OmegaFamily::PowerLaw: return params_[0] / t;
        case OmegaFamily::InverseSquareAffine: return -2.0 * params_[0] / (params_[0] * t + params_[1]);
        case OmegaFamily::InverseSquareScaled: return -2.0 / t;
        case OmegaFamily::Tabulated: return table_->derivative(t) / (*table_)(t);
        case OmegaFamily::Mapped: return log_deriv_(t);
    }
    return 0.0;
}

double OmegaProfile::anchor() const {
    if (validity_.contains(1.0)) return 1.0;
    if (family_ == OmegaFamily::Tabulated) return validity_.lo;
    if (std::isfinite(validity_.lo)) return validity_.lo + 1.0;
    return validity_.hi - 1.0;
}

double OmegaProfile::antiderivative(double t) const {
    check(t);
    const double t0 = anchor();
    switch (family_) {
        case OmegaFamily::PowerLaw: {
            const double a = params_[0];
            if (a == -1.0) return std::log(t / t0);
            return (std::pow(t, a + 1.0) - std::pow(t0, a + 1.0)) / (a + 1.0);
        }
        case OmegaFamily::InverseSquareAffine: {
            const double d1 = params_[0], d2 = params_[1];
            return -1.0 / (d1 * (d1 * t + d2)) + 1.0 / (d1 * (d1 * t0 + d2));
        }
        case OmegaFamily::InverseSquareScaled: {
            const double g2 = params_[0] * params_[0];
            return g2 * (1.0 / t0 - 1.0 / t);
        }
        case OmegaFamily::Mapped:
            if (anti_) return anti_(t) - anti_(t0);
            [[fallthrough]];
        case OmegaFamily::Tabulated: return integrate([this](double u) { return eval(u); }, t0, t);
    }
    return 0.0;
}

std::optional<double> OmegaProfile::power_exponent() const {
    switch (family_) {
        case OmegaFamily::PowerLaw: return params_[0];
        case OmegaFamily::InverseSquareScaled: return -2.0;
        case OmegaFamily::InverseSquareAffine:
            if (params_[1] == 0.0) return -2.0;
            return std::nullopt;
        default: return std::nullopt;
    }
}

std::optional<std::pair<double, double>> OmegaProfile::inverse_square_form() const {
    switch (family_) {
        case OmegaFamily::InverseSquareAffine: return std::make_pair(params_[0], params_[1]);
        case OmegaFamily::InverseSquareScaled: return std::make_pair(1.0, 0.0);
        case OmegaFamily::PowerLaw:
            if (params_[0] == -2.0) return std::make_pair(1.0, 0.0);
            return std::nullopt;
        default: return std::nullopt;
    }
}

bool OmegaProfile::is_constant_on(double a, double b) const {
    const int probes = 33;
    for (int i = 0; i < probes; ++i) {
        const double t = a + (b - a) * (i + 0.5) / probes;
        if (!validity_.contains(t)) continue;
        if (std::abs(log_deriv(t)) > 1e-12) return false;
    }
    return true;
}

double omega_eval(const OmegaProfile& omega, double t) { return omega.eval(t); }
double omega_log_deriv(const OmegaProfile& omega, double t) { return omega.log_deriv(t); }

}  // namespace symclass
