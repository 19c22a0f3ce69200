#pragma once

#include "symclass/classifier_common.hpp"
#include "symclass/constraint_solve.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symclass {

// Point symmetry with ξ = ξ(t) and gauge function f(t, x) = Σ coefficient(t) field(x).
struct NoetherSymmetry {
    PointSymmetry generator;
    std::vector<ScalarTerm> gauge_terms;
    std::string case_tag;  // I, II.a, II.b
    std::map<std::string, double> constants;
    std::optional<TimeFunction> K;

    double gauge(double t, const Vec& x) const;
    std::string describe() const;
};

struct NoetherCaseOutcome {
    std::vector<NoetherSymmetry> symmetries;
    std::vector<Rejection> rejected;
    std::optional<std::string> inapplicable;
};

struct NoetherClassification {
    std::vector<NoetherSymmetry> symmetries;
    NoetherCaseOutcome case_I, case_II;
    std::vector<Rejection> duplicates;
};

// Noether point symmetries of L = ½ g ẋẋ − ω(t) V.
NoetherClassification classify_noether(const MetricSpace& space, const ScalarField& V, const OmegaProfile& omega,
                                       const std::vector<Collineation>& catalog,
                                       const ClassifierSettings& settings = {});

// Affine-in-t generators (αt+β)∂t + Σ a_Y Y over KVs and the HV, f = c2 ∫ω.
NoetherCaseOutcome noether_case_I(const ProblemContext& ctx);
// Gradient KVs/HV: X = ξ(t)∂t + T(t) Y, f = T,t S + K(t).
NoetherCaseOutcome noether_case_II(const ProblemContext& ctx);

// I(t, x, ẋ) = ξ (½ g ẋẋ + ω V) − g(η, ẋ) + f
struct FirstIntegral {
    std::function<double(double, const Vec&, const Vec&)> eval;
    std::string provenance;
    std::string description;

    double operator()(double t, const Vec& x, const Vec& v) const { return eval(t, x, v); }
};

FirstIntegral noether_integral(const NoetherSymmetry& sym, const MetricSpace& space, const ScalarField& V,
                               const OmegaProfile& omega);

std::function<double(double, const Vec&)> gauge_function(const NoetherSymmetry& sym);

}  // namespace symclass
