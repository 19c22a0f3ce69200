#pragma once

#include "symclass/monotone_cubic.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symclass {

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_closed = false;
    bool hi_closed = false;

    static Interval open(double a, double b) { return {a, b, false, false}; }
    static Interval closed(double a, double b) { return {a, b, true, true}; }

    bool contains(double t) const {
        return (lo_closed ? t >= lo : t > lo) && (hi_closed ? t <= hi : t < hi);
    }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    std::string to_string() const;
};

enum class OmegaFamily { PowerLaw, InverseSquareAffine, InverseSquareScaled, Tabulated, Mapped };

std::string to_string(OmegaFamily f);

// Time coefficient ω(t) of the equation of motion.
class OmegaProfile {
public:
    using Fn = std::function<double(double)>;

    // t^a, a != 0, on (0, inf).
    static OmegaProfile power_law(double a);
    // 1/(d1 t + d2)^2, d1 != 0, on the side of the pole containing t = 1 (or t > pole if 1 is the pole).
    static OmegaProfile inverse_square_affine(double d1, double d2);
    // gamma^2 / t^2 on (0, inf).
    static OmegaProfile inverse_square_scaled(double gamma);
    // Monotone cubic through (t_k, ω_k); ω_k > 0, not all equal.
    static OmegaProfile tabulated(std::vector<double> t, std::vector<double> omega);
    // Arbitrary evaluator, produced by reparametrization. May be constant.
    static OmegaProfile mapped(Fn value, Fn log_deriv, Interval validity, std::string description,
                               Fn antiderivative = {});

    OmegaFamily family() const noexcept { return family_; }
    const std::vector<double>& parameters() const noexcept { return params_; }
    const Interval& validity() const noexcept { return validity_; }
    std::string name() const;

    double eval(double t) const;
    double log_deriv(double t) const;
    double derivative(double t) const { return eval(t) * log_deriv(t); }
    // ∫_{anchor}^{t} ω; anchor is t = 1 when valid, otherwise the left end of the tabulation.
    double antiderivative(double t) const;
    double anchor() const;

    // Exponent a when ω = t^a, also for γ²/t² (a = -2) and 1/(d1 t)^2.
    std::optional<double> power_exponent() const;
    // (d1, d2) with ω = c / (d1 t + d2)^2 when the family is of inverse-square type.
    std::optional<std::pair<double, double>> inverse_square_form() const;

    // True when ω,t vanishes at every probe point of [a, b].
    bool is_constant_on(double a, double b) const;

private:
    OmegaProfile() = default;
    void check(double t) const;

    OmegaFamily family_ = OmegaFamily::PowerLaw;
    std::vector<double> params_;
    Interval validity_;
    std::shared_ptr<const MonotoneCubic> table_;
    Fn value_, log_deriv_, anti_;
    std::string description_;
};

double omega_eval(const OmegaProfile& omega, double t);
double omega_log_deriv(const OmegaProfile& omega, double t);

}  // namespace symclass
