#include "symclass/time_function.hpp"

#include "symclass/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace symclass {

namespace {

void trim(std::vector<double>& c) {
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    for (double& v : c)
        if (std::abs(v) <= 1e-14 * scale) v = 0.0;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

TimeFunction TimeFunction::constant(double c) { return polynomial({c}); }

TimeFunction TimeFunction::polynomial(std::vector<double> coeffs) {
    TimeFunction f(Kind::Polynomial);
    trim(coeffs);
    f.coeffs_ = std::move(coeffs);
    return f;
}

TimeFunction TimeFunction::dense(std::shared_ptr<const ode::DenseSolution> sol, Vec weights, std::string label) {
    if (!sol || static_cast<std::size_t>(weights.size()) != sol->dimension())
        throw InvalidArgument("dense time function weights do not match solution");
    TimeFunction f(Kind::Dense);
    f.sol_ = std::move(sol);
    f.weights_ = std::move(weights);
    f.label_ = std::move(label);
    return f;
}

TimeFunction TimeFunction::evaluator(Fn value, Fn derivative, std::string description) {
    TimeFunction f(Kind::Evaluator);
    f.value_ = std::move(value);
    f.deriv_ = std::move(derivative);
    f.label_ = std::move(description);
    return f;
}

double TimeFunction::operator()(double t) const {
    switch (kind_) {
        case Kind::Polynomial: {
            double s = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * t + *it;
            return s;
        }
        case Kind::Dense: return sol_->combination(t, weights_);
        case Kind::Evaluator: return value_(t);
    }
    return 0.0;
}

double TimeFunction::derivative(double t) const {
    switch (kind_) {
        case Kind::Polynomial: {
            double s = 0.0;
            for (std::size_t k = coeffs_.size(); k-- > 1;) s = s * t + static_cast<double>(k) * coeffs_[k];
            return s;
        }
        case Kind::Dense: return sol_->derivative(t).dot(weights_);
        case Kind::Evaluator:
            if (!deriv_) throw InvalidArgument("time function " + label_ + " has no derivative");
            return deriv_(t);
    }
    return 0.0;
}

TimeFunction TimeFunction::scaled(double s) const {
    TimeFunction f = *this;
    switch (kind_) {
        case Kind::Polynomial:
            for (double& c : f.coeffs_) c *= s;
            trim(f.coeffs_);
            break;
        case Kind::Dense: f.weights_ *= s; break;
        case Kind::Evaluator: {
            auto v = value_;
            auto d = deriv_;
            f.value_ = [v, s](double t) { return s * v(t); };
            if (d) f.deriv_ = [d, s](double t) { return s * d(t); };
            f.label_ = format_number(s) + "*(" + label_ + ")";
            break;
        }
    }
    return f;
}

TimeFunction TimeFunction::derivative_function() const {
    if (kind_ == Kind::Polynomial) {
        std::vector<double> d;
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(static_cast<double>(k) * coeffs_[k]);
        return polynomial(d);
    }
    const TimeFunction self = *this;
    return evaluator([self](double t) { return self.derivative(t); }, {}, "d/dt[" + describe() + "]");
}

bool TimeFunction::is_zero() const {
    if (kind_ == Kind::Polynomial) return coeffs_.empty();
    if (kind_ == Kind::Dense) return weights_.cwiseAbs().maxCoeff() == 0.0;
    return false;
}

double TimeFunction::max_abs_on(double a, double b, int probes) const {
    double m = 0.0;
    for (int i = 0; i <= probes; ++i) {
        const double t = a + (b - a) * i / probes;
        m = std::max(m, std::abs((*this)(t)));
    }
    return m;
}

double TimeFunction::t_front() const {
    return kind_ == Kind::Dense ? sol_->t_front() : -std::numeric_limits<double>::infinity();
}

double TimeFunction::t_back() const {
    return kind_ == Kind::Dense ? sol_->t_back() : std::numeric_limits<double>::infinity();
}

std::string TimeFunction::describe() const {
    switch (kind_) {
        case Kind::Polynomial: {
            if (coeffs_.empty()) return "0";
            std::ostringstream os;
            os.precision(10);
            bool first = true;
            for (std::size_t k = coeffs_.size(); k-- > 0;) {
                const double c = coeffs_[k];
                if (c == 0.0) continue;
                const double mag = first ? c : std::abs(c);
                if (!first) os << (c < 0 ? " - " : " + ");
                first = false;
                if (k == 0) {
                    os << mag;
                } else {
                    if (mag == -1.0)
                        os << "-";
                    else if (mag != 1.0)
                        os << mag << "*";
                    os << "t";
                    if (k > 1) os << "^" << k;
                }
            }
            return os.str();
        }
        case Kind::Dense: return label_.empty() ? "numeric" : label_;
        case Kind::Evaluator: return label_;
    }
    return "?";
}

std::vector<double> shift_polynomial(const std::vector<double>& c, double t0) {
    // (t - t0)^k = Σ_j C(k, j) t^j (-t0)^(k-j)
    std::vector<double> out(c.size(), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        double binom = 1.0;
        for (std::size_t j = 0; j <= k; ++j) {
            if (j > 0) binom = binom * static_cast<double>(k - j + 1) / static_cast<double>(j);
            out[j] += c[k] * binom * std::pow(-t0, static_cast<double>(k - j));
        }
    }
    return out;
}

}  // namespace symclass
