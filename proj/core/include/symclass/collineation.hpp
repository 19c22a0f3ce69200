#pragma once

#include "symclass/linalg.hpp"
#include "symclass/metric_space.hpp"
#include "symclass/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symclass {

enum class CollineationClass { GradientKV, NongradientKV, GradientHV, AffineCollineation, SpecialPC };

std::string to_string(CollineationClass c);

// Vector field Y^i(x) with polynomial components.
class Collineation {
public:
    // potential: S with Y^i = g^ij S_,j (gradient classes).
    // projective_factor: φ with (L_Y Γ)^i_jk = δ^i_j φ_,k + δ^i_k φ_,j (special PCs).
    Collineation(std::string label, CollineationClass cls, std::vector<Polynomial> components, double psi = 0.0,
                 std::optional<Polynomial> potential = std::nullopt,
                 std::optional<Polynomial> projective_factor = std::nullopt);

    const std::string& label() const noexcept { return label_; }
    CollineationClass cls() const noexcept { return cls_; }
    double psi() const noexcept { return psi_; }
    std::size_t dimension() const noexcept { return components_.size(); }
    const std::vector<Polynomial>& components() const noexcept { return components_; }
    const std::optional<Polynomial>& potential() const noexcept { return potential_; }
    const std::optional<Polynomial>& projective_factor() const noexcept { return factor_; }

    bool is_gradient() const noexcept;
    bool is_killing() const noexcept;
    // KV, HV or AC: preserves the connection.
    bool is_affine() const noexcept;

    Vec value(const Vec& x) const;
    // J(i, j) = ∂_j Y^i
    Mat jacobian(const Vec& x) const;
    // H(i, j, k) = ∂_j ∂_k Y^i
    Tensor3 hessian(const Vec& x) const;
    double potential_value(const Vec& x) const;

    std::string describe() const;

private:
    std::string label_;
    CollineationClass cls_;
    std::vector<Polynomial> components_;
    std::vector<std::vector<Polynomial>> d1_;
    std::vector<std::vector<std::vector<Polynomial>>> d2_;
    double psi_;
    std::optional<Polynomial> potential_;
    std::optional<Polynomial> factor_;
};

enum class CatalogScope {
    // Full affine algebra plus special projective vectors.
    Full,
    // Same without the symmetric shears B_IJ = x_J ∂_I + x_I ∂_J.
    WithoutShears
};

// Order: S_I, X_IJ, H, A_I, B_IJ, P_I.
std::vector<Collineation> euclidean_catalog(std::size_t n, CatalogScope scope = CatalogScope::Full);

// (L_Y g)_ij = Y^k ∂_k g_ij + g_kj ∂_i Y^k + g_ik ∂_j Y^k
Mat lie_derivative_metric(const Collineation& Y, const MetricSpace& space, const Vec& x);

// (L_Y Γ)^i_jk = ∂_j∂_k Y^i + Y^l ∂_l Γ^i_jk − Γ^l_jk ∂_l Y^i + Γ^i_lk ∂_j Y^l + Γ^i_jl ∂_k Y^l
Tensor3 lie_derivative_connection(const Collineation& Y, const MetricSpace& space, const Vec& x);

// Max-abs residual of the defining identity of Y's class at x (and of Y = ∇S for gradient classes).
double collineation_residual(const Collineation& Y, const MetricSpace& space, const Vec& x);

struct CatalogCheck {
    std::vector<Collineation> accepted;
    std::vector<std::pair<std::string, double>> rejected;  // label, worst residual
};

// Keeps only vectors whose identity residual stays below tol at every point.
CatalogCheck verify_catalog(const std::vector<Collineation>& catalog, const MetricSpace& space,
                            const std::vector<Vec>& points, double tol = 1e-6);

}  // namespace symclass
