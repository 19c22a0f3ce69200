#pragma once

#include "symclass/linalg.hpp"
#include "symclass/time_function.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symclass {

// coefficient(t) * field(x); an empty field means the constant 1.
struct ScalarTerm {
    TimeFunction coefficient;
    std::function<double(const Vec&)> field;
    std::string label;

    double operator()(double t, const Vec& x) const { return coefficient(t) * (field ? field(x) : 1.0); }
};

// coefficient(t) * field(x), field vector-valued.
struct VectorTerm {
    TimeFunction coefficient;
    std::function<Vec(const Vec&)> field;
    std::string label;
};

// X = ξ(t, x) ∂t + η^i(t, x) ∂_i with the provenance of its construction.
class PointSymmetry {
public:
    PointSymmetry() = default;
    PointSymmetry(std::size_t dim, std::vector<ScalarTerm> xi, std::vector<VectorTerm> eta, std::string case_tag);

    std::size_t dimension() const noexcept { return dim_; }
    const std::vector<ScalarTerm>& xi_terms() const noexcept { return xi_; }
    const std::vector<VectorTerm>& eta_terms() const noexcept { return eta_; }
    const std::string& case_tag() const noexcept { return case_tag_; }

    double xi(double t, const Vec& x) const;
    Vec eta(double t, const Vec& x) const;
    // True when no ξ term carries a spatial factor.
    bool xi_depends_on_time_only() const;
    // True when every coefficient is a closed-form polynomial or evaluator.
    bool closed_form() const;
    // Intersection of the dense-solution ranges of all coefficients.
    double t_front() const;
    double t_back() const;

    std::map<std::string, double> constants;
    std::map<std::string, TimeFunction> coefficients;  // named D, T, C, ...

    std::string describe() const;

private:
    std::size_t dim_ = 0;
    std::vector<ScalarTerm> xi_;
    std::vector<VectorTerm> eta_;
    std::string case_tag_;
};

// Generator values (ξ, η) stacked over jets; columns are generators.
Mat generator_matrix(const std::vector<const PointSymmetry*>& syms, const std::vector<std::pair<double, Vec>>& points);

// Greedy selection in input order: a generator is kept when it raises the rank.
// Returns the indices of kept generators.
std::vector<std::size_t> independent_subset(const std::vector<const PointSymmetry*>& syms,
                                            const std::vector<std::pair<double, Vec>>& points,
                                            double rel_tol = 1e-8);

}  // namespace symclass
